#include "fc/reduction.hpp"

#include <stdexcept>

#include "fc/errors.hpp"

namespace fc {

namespace {

RationalFunction zvar(int k) { return RationalFunction::variable(theta_symbol(k)); }

ThetaMonomial square_mono(int i) {
    ThetaMonomial m{0, 0, 0};
    m[static_cast<std::size_t>(i)] = 2;
    return m;
}

ThetaMonomial square_times(int i, int j) {
    ThetaMonomial m = square_mono(i);
    m[static_cast<std::size_t>(j)] = 1;
    return m;
}

ThetaMonomial square_times2(int i) {
    ThetaMonomial m = square_mono(i);
    for (int k = 0; k < 3; ++k)
        if (k != i) m[static_cast<std::size_t>(k)] = 1;
    return m;
}

}  // namespace

ParameterVector::ParameterVector(std::array<RationalFunction, 5> entries) : v(std::move(entries)) {
    for (const auto& e : v)
        for (int z : {SYM_Z1, SYM_Z2, SYM_Z3})
            if (e.uses_var(z))
                throw std::invalid_argument("parameter entries must not involve z variables");
}

ParameterVector ParameterVector::symbolic() {
    return ParameterVector({RationalFunction::variable(SYM_A), RationalFunction::variable(SYM_B),
                            RationalFunction::variable(SYM_C1), RationalFunction::variable(SYM_C2),
                            RationalFunction::variable(SYM_C3)});
}

ParameterVector ParameterVector::shifted(int index, int delta) const {
    ParameterVector p = *this;
    p.v[static_cast<std::size_t>(index)] += RationalFunction(delta);
    return p;
}

std::string ParameterVector::key() const {
    std::string k;
    for (std::size_t i = 0; i < 5; ++i) {
        if (i) k += ';';
        k += to_string(v[i]);
    }
    return k;
}

Polynomial d0_polynomial() { return known_denominator_factors()[0]; }

Polynomial dcont_bracket() { return known_denominator_factors()[1]; }

CanonicalSystem build_canonical_system(const ParameterVector& params) {
    const RationalFunction& a = params.a();
    const RationalFunction& b = params.b();

    // square-free part of (a + th1+th2+th3)(b + th1+th2+th3)
    NormalOperator P;
    P[0] = a * b;
    for (int s : {1, 2, 3}) P.c[static_cast<std::size_t>(s)] = a + b;
    for (int s : {4, 5, 6}) P.c[static_cast<std::size_t>(s)] = RationalFunction(2);

    // th_i^2 - z_i (th1^2 + th2^2 + th3^2) = z_i P - (c_i - 1) th_i
    FieldMatrix A(3, FieldVector(3));
    FieldMatrix B(3, FieldVector(8));
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            A[i][k] = (i == k ? RationalFunction(1) : RationalFunction(0)) - zvar(i);
        }
        NormalOperator rhs = P.scaled(zvar(i));
        rhs.c[static_cast<std::size_t>(1 + i)] -= params.c(i) - RationalFunction(1);
        for (std::size_t s = 0; s < 8; ++s) B[i][s] = rhs.c[s];
    }
    FieldMatrix X = solve_linear_multi(A, B, known_denominator_factors());

    CanonicalSystem sys;
    sys.params = params;
    for (int i = 0; i < 3; ++i)
        for (std::size_t s = 0; s < 8; ++s) sys.L[static_cast<std::size_t>(i)].c[s] = X[i][s];
    return sys;
}

ReductionTable::ReductionTable(ParameterVector params, EntryMap entries)
    : params_(std::move(params)), entries_(std::move(entries)) {}

const NormalOperator& ReductionTable::at(const ThetaMonomial& m) const {
    auto it = entries_.find(m);
    if (it == entries_.end()) throw UnreducibleMonomial(to_string(m));
    return it->second;
}

namespace {

// Shared expansion step for the staged build: accumulates th_j applied to
// coefficient v on basis monomial al into a known 8-vector part plus scalar
// couplings to still-unknown table entries.
struct Expansion {
    NormalOperator known;
    std::map<ThetaMonomial, RationalFunction> coupling;  // unknown entry -> coefficient

    void absorb(int j, const ThetaMonomial& al, const RationalFunction& v,
                const ReductionTable::EntryMap& solved) {
        known.c[static_cast<std::size_t>(slot_of(al))] += theta_apply(theta_symbol(j), v);
        ThetaMonomial up = al;
        up[static_cast<std::size_t>(j)] += 1;
        if (square_free(up)) {
            known.c[static_cast<std::size_t>(slot_of(up))] += v;
            return;
        }
        auto it = solved.find(up);
        if (it != solved.end()) {
            for (std::size_t s = 0; s < 8; ++s)
                if (!it->second.c[s].is_zero()) known.c[s] += v * it->second.c[s];
            return;
        }
        coupling[up] += v;
    }
};

}  // namespace

ReductionTable::ReductionTable(const CanonicalSystem& sys) : params_(sys.params) {
    for (int i = 0; i < 3; ++i) entries_.emplace(square_mono(i), sys.L[static_cast<std::size_t>(i)]);

    // th_i^2 th_j entries: expand th_j . L_i; the unknowns couple through the
    // same scalar matrix in every basis slot, one joint solve with 8 columns.
    std::vector<std::pair<int, int>> idx;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) idx.emplace_back(i, j);
    std::map<ThetaMonomial, std::size_t> pos;
    for (std::size_t r = 0; r < idx.size(); ++r)
        pos.emplace(square_times(idx[r].first, idx[r].second), r);

    FieldMatrix A(6, FieldVector(6));
    FieldMatrix B(6, FieldVector(8));
    for (std::size_t r = 0; r < idx.size(); ++r) {
        auto [i, j] = idx[r];
        A[r][r] = RationalFunction(1);
        Expansion ex;
        const NormalOperator& Li = entries_.at(square_mono(i));
        for (std::size_t s = 0; s < 8; ++s)
            if (!Li.c[s].is_zero()) ex.absorb(j, BASIS[s], Li.c[s], entries_);
        for (const auto& [mono, coeff] : ex.coupling) {
            auto p = pos.find(mono);
            if (p == pos.end()) throw std::logic_error("staged closure violated");
            A[r][p->second] -= coeff;
        }
        for (std::size_t s = 0; s < 8; ++s) B[r][s] = ex.known.c[s];
    }
    FieldMatrix X = solve_linear_multi(A, B, known_denominator_factors());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        NormalOperator n;
        for (std::size_t s = 0; s < 8; ++s) n.c[s] = X[r][s];
        entries_.emplace(square_times(idx[r].first, idx[r].second), n);
    }

    // th_i^2 th_j th_k entries from th_j . (th_i^2 th_k) with j the smaller
    // companion; each couples only to the j-th unknown of this stage.
    FieldMatrix A3(3, FieldVector(3));
    FieldMatrix B3(3, FieldVector(8));
    for (int i = 0; i < 3; ++i) {
        int j = -1, k = -1;
        for (int m = 0; m < 3; ++m)
            if (m != i) (j < 0 ? j : k) = m;
        A3[i][i] = RationalFunction(1);
        Expansion ex;
        const NormalOperator& Xik = entries_.at(square_times(i, k));
        for (std::size_t s = 0; s < 8; ++s)
            if (!Xik.c[s].is_zero()) ex.absorb(j, BASIS[s], Xik.c[s], entries_);
        for (const auto& [mono, coeff] : ex.coupling) {
            if (mono != square_times2(j)) throw std::logic_error("staged closure violated");
            A3[i][j] -= coeff;
        }
        for (std::size_t s = 0; s < 8; ++s) B3[i][s] = ex.known.c[s];
    }
    FieldMatrix X3 = solve_linear_multi(A3, B3, known_denominator_factors());
    for (int i = 0; i < 3; ++i) {
        NormalOperator n;
        for (std::size_t s = 0; s < 8; ++s) n.c[s] = X3[i][s];
        entries_.emplace(square_times2(i), n);
    }
}

NormalOperator apply_theta_normal(int k, const NormalOperator& N, const ReductionTable& table) {
    NormalOperator out;
    for (std::size_t s = 0; s < 8; ++s) {
        const RationalFunction& v = N.c[s];
        if (v.is_zero()) continue;
        const ThetaMonomial& al = BASIS[s];
        out.c[s] += theta_apply(theta_symbol(k), v);
        ThetaMonomial up = al;
        up[static_cast<std::size_t>(k)] += 1;
        if (square_free(up)) {
            out.c[static_cast<std::size_t>(slot_of(up))] += v;
        } else {
            const NormalOperator& rep = table.at(up);
            for (std::size_t t = 0; t < 8; ++t)
                if (!rep.c[t].is_zero()) out.c[t] += v * rep.c[t];
        }
    }
    return out;
}

namespace {

NormalOperator reduce_monomial(const ThetaMonomial& m, const ReductionTable& table) {
    if (square_free(m)) return NormalOperator::basis_vector(slot_of(m));
    if (table.contains(m)) return table.at(m);
    // peel the largest exponent (ties on the higher index) and recurse
    int pick = 0;
    for (int k = 1; k < 3; ++k)
        if (m[static_cast<std::size_t>(k)] >= m[static_cast<std::size_t>(pick)]) pick = k;
    ThetaMonomial rest = m;
    rest[static_cast<std::size_t>(pick)] -= 1;
    return apply_theta_normal(pick, reduce_monomial(rest, table), table);
}

}  // namespace

NormalOperator normal_reduce(const ThetaOperator& L, const ReductionTable& table) {
    NormalOperator out;
    for (const auto& [m, f] : L.terms()) out += reduce_monomial(m, table).scaled(f);
    return out;
}

NormalOperator compose_normal(const NormalOperator& Q, const NormalOperator& S,
                              const ReductionTable& table) {
    NormalOperator out;
    for (std::size_t s = 0; s < 8; ++s) {
        if (Q.c[s].is_zero()) continue;
        NormalOperator cur = S;
        const ThetaMonomial& al = BASIS[s];
        for (int k = 0; k < 3; ++k)
            for (int e = 0; e < al[static_cast<std::size_t>(k)]; ++e)
                cur = apply_theta_normal(k, cur, table);
        out += cur.scaled(Q.c[s]);
    }
    return out;
}

}  // namespace fc
