#include "fc/linsolve.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "fc/errors.hpp"

namespace fc {

namespace {

Polynomial exact_div(const Polynomial& num, const Polynomial& den) {
    auto q = try_exact_divide(num, den);
    if (!q) throw std::logic_error("fraction-free elimination: interior division not exact");
    return std::move(*q);
}

// Elimination entry: expanded `core` times a product of table factor powers.
// The factor table collects the denominators of the input matrix (powers of a
// handful of polynomials in practice), so most of the content every minor
// accumulates rides along as exponents instead of being multiplied out.
struct FEntry {
    Polynomial core;            // zero iff the entry is zero
    std::vector<unsigned> exp;  // parallel to the factor table
};

using FRow = std::vector<FEntry>;
using FMatrix = std::vector<FRow>;

bool is_one_entry(const FEntry& e) {
    if (!e.core.is_one()) return false;
    for (unsigned x : e.exp)
        if (x) return false;
    return true;
}

Polynomial expand(const FEntry& e, const std::vector<Polynomial>& fac) {
    Polynomial p = e.core;
    for (std::size_t i = 0; i < fac.size(); ++i)
        if (e.exp[i]) p = p * fac[i].pow(e.exp[i]);
    return p;
}

// pull table factors back out of a freshly computed core
void extract(FEntry& e, const std::vector<Polynomial>& fac) {
    if (e.core.is_zero() || e.core.is_constant()) return;
    for (std::size_t i = 0; i < fac.size(); ++i) {
        while (auto q = try_exact_divide(e.core, fac[i])) {
            e.core = std::move(*q);
            ++e.exp[i];
            if (e.core.is_constant()) return;
        }
    }
}

// t = p*q - r*s with the common factor content kept symbolic; only the
// imbalance between the two products is multiplied out.
FEntry fmul_sub(const FEntry& p, const FEntry& q, const FEntry& r, const FEntry& s,
                const std::vector<Polynomial>& fac) {
    const std::size_t nf = fac.size();
    FEntry t;
    t.exp.assign(nf, 0);
    const bool pq = !p.core.is_zero() && !q.core.is_zero();
    const bool rs = !r.core.is_zero() && !s.core.is_zero();
    if (!pq && !rs) return t;
    if (pq && !rs) {
        t.core = p.core * q.core;
        for (std::size_t i = 0; i < nf; ++i) t.exp[i] = p.exp[i] + q.exp[i];
    } else if (!pq && rs) {
        t.core = -(r.core * s.core);
        for (std::size_t i = 0; i < nf; ++i) t.exp[i] = r.exp[i] + s.exp[i];
    } else {
        Polynomial pextra = Polynomial::constant(BigRational(1));
        Polynomial rextra = pextra;
        bool pe = false, re = false;
        for (std::size_t i = 0; i < nf; ++i) {
            unsigned epq = p.exp[i] + q.exp[i], ers = r.exp[i] + s.exp[i];
            t.exp[i] = std::min(epq, ers);
            if (epq > t.exp[i]) {
                pextra = pextra * fac[i].pow(epq - t.exp[i]);
                pe = true;
            }
            if (ers > t.exp[i]) {
                rextra = rextra * fac[i].pow(ers - t.exp[i]);
                re = true;
            }
        }
        // fold the imbalance into the smaller factor of each product, then fuse
        const Polynomial& p1 = pe ? pextra * (p.core.term_count() <= q.core.term_count() ? p.core : q.core) : p.core;
        const Polynomial& p2 = pe ? (p.core.term_count() <= q.core.term_count() ? q.core : p.core) : q.core;
        const Polynomial& r1 = re ? rextra * (r.core.term_count() <= s.core.term_count() ? r.core : s.core) : r.core;
        const Polynomial& r2 = re ? (r.core.term_count() <= s.core.term_count() ? s.core : r.core) : s.core;
        t.core = mul_sub(p1, p2, r1, r2);
    }
    if (t.core.is_zero()) {
        t.exp.assign(nf, 0);
        return t;
    }
    extract(t, fac);
    return t;
}

// exact division by the previous pivot: exponents cancel, deficits are
// divided out of the core, and if the cores do not divide cleanly the
// operands are expanded and divided the slow way (never seen in practice,
// kept for safety).
FEntry fdiv(FEntry t, const FEntry& prev, const std::vector<Polynomial>& fac) {
    if (t.core.is_zero()) return t;
    const std::size_t nf = fac.size();
    std::vector<unsigned> exp(nf, 0), divided(nf, 0);
    bool clean = true;
    for (std::size_t i = 0; i < nf && clean; ++i) {
        if (t.exp[i] >= prev.exp[i]) {
            exp[i] = t.exp[i] - prev.exp[i];
            continue;
        }
        unsigned deficit = prev.exp[i] - t.exp[i];
        while (deficit > 0) {
            auto q = try_exact_divide(t.core, fac[i]);
            if (!q) {
                clean = false;
                break;
            }
            t.core = std::move(*q);
            ++divided[i];
            --deficit;
        }
    }
    if (clean) {
        if (prev.core.is_constant()) {
            t.core = t.core.scaled(prev.core.constant_value().reciprocal());
            t.exp = std::move(exp);
            return t;
        }
        if (auto q = try_exact_divide(t.core, prev.core)) {
            t.core = std::move(*q);
            t.exp = std::move(exp);
            return t;
        }
    }
    // undo the partial factor divisions, then divide the expanded operands
    for (std::size_t i = 0; i < nf; ++i)
        if (divided[i]) t.core = t.core * fac[i].pow(divided[i]);
    FEntry full;
    full.exp.assign(nf, 0);
    full.core = exact_div(expand(t, fac), expand(prev, fac));
    extract(full, fac);
    return full;
}

std::size_t find_factor_index(std::vector<Polynomial>& fac, const Polynomial& f) {
    for (std::size_t i = 0; i < fac.size(); ++i)
        if (fac[i] == f) return i;
    fac.push_back(f);
    return fac.size() - 1;
}

// Clears the denominators of one row of [A | B] by exponent bookkeeping: the
// row multiplier is the per-factor maximum, so each cleared entry is its
// numerator times the factor gaps, never expanded.
void clear_row(const FieldVector& arow, const FieldVector& brow, std::vector<Polynomial>& fac,
               FRow& aout, FRow& bout) {
    std::vector<unsigned> rowmax(fac.size(), 0);
    auto note = [&](const RationalFunction& f) {
        for (const auto& [poly, e] : f.den_factors()) {
            std::size_t i = find_factor_index(fac, poly);
            if (i >= rowmax.size()) rowmax.resize(fac.size(), 0);
            rowmax[i] = std::max(rowmax[i], e);
        }
    };
    for (const auto& f : arow) note(f);
    for (const auto& f : brow) note(f);

    auto build = [&](const RationalFunction& f) {
        FEntry e;
        e.exp.assign(fac.size(), 0);
        if (f.is_zero()) return e;
        e.core = f.num();
        for (std::size_t i = 0; i < fac.size(); ++i) e.exp[i] = rowmax[i];
        for (const auto& [poly, x] : f.den_factors()) {
            std::size_t i = find_factor_index(fac, poly);
            e.exp[i] -= x;
        }
        return e;
    };
    aout.clear();
    bout.clear();
    aout.reserve(arow.size());
    bout.reserve(brow.size());
    for (const auto& f : arow) aout.push_back(build(f));
    for (const auto& f : brow) bout.push_back(build(f));
}

// One-step fraction-free Gauss-Jordan: each step eliminates column k from
// every other row with the 2x2-determinant update and divides by the previous
// pivot, which is exact because every intermediate entry is a minor of the
// cleared matrix. Ends with A = det * I and B[i][c] = det * x_i, never
// building anything bigger than det-sized operands.
void bareiss_jordan(FMatrix& A, FMatrix& B, const std::vector<Polynomial>& fac) {
    const std::size_t n = A.size();
    FEntry prev;
    prev.core = Polynomial::constant(BigRational(1));
    prev.exp.assign(fac.size(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        std::size_t best = 0;
        for (std::size_t r = k; r < n; ++r) {
            if (A[r][k].core.is_zero()) continue;
            std::size_t sz = A[r][k].core.term_count();
            if (piv == n || sz < best) {
                piv = r;
                best = sz;
            }
        }
        if (piv == n) throw SingularSystem(static_cast<int>(k));
        std::swap(A[piv], A[k]);
        std::swap(B[piv], B[k]);
        const bool unit_prev = is_one_entry(prev);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            auto update = [&](FEntry& tgt, const FEntry& pivrow) {
                FEntry t = fmul_sub(A[k][k], tgt, A[i][k], pivrow, fac);
                tgt = unit_prev ? std::move(t) : fdiv(std::move(t), prev, fac);
            };
            // columns left of k are already zero except each row's own diagonal,
            // which only rescales (the pivot row is zero there)
            if (i < k) update(A[i][i], A[k][i]);
            for (std::size_t j = k + 1; j < n; ++j) update(A[i][j], A[k][j]);
            for (std::size_t c = 0; c < B[i].size(); ++c) update(B[i][c], B[k][c]);
            A[i][k] = FEntry{Polynomial(), std::vector<unsigned>(fac.size(), 0)};
        }
        prev = A[k][k];
    }
}

// x = b / det as a rational function: factor exponents cancel against the
// table, leftover numerator content cancels by trial division, and any core
// residue the table does not explain stays in the denominator opaquely.
RationalFunction reduce_entry(FEntry b, const FEntry& det, const std::vector<Polynomial>& fac) {
    if (b.core.is_zero()) return RationalFunction();
    Polynomial num = std::move(b.core);
    RationalFunction::FactorList kept;
    for (std::size_t i = 0; i < fac.size(); ++i) {
        int net = static_cast<int>(det.exp[i]) - static_cast<int>(b.exp[i]);
        while (net < 0) {
            num = num * fac[i];
            ++net;
        }
        while (net > 0) {
            auto q = try_exact_divide(num, fac[i]);
            if (!q) break;
            num = std::move(*q);
            --net;
        }
        if (net > 0) kept.emplace_back(fac[i], static_cast<unsigned>(net));
    }
    Polynomial rest = det.core;
    if (!rest.is_constant()) {
        if (auto q = try_exact_divide(num, rest)) {
            num = std::move(*q);
            rest = Polynomial::constant(BigRational(1));
        }
    }
    kept.emplace_back(std::move(rest), 1u);
    return RationalFunction::from_factored(std::move(num), std::move(kept));
}

void check_square(const FieldMatrix& A) {
    for (const auto& row : A)
        if (row.size() != A.size()) throw std::invalid_argument("matrix is not square");
}

FieldMatrix solve_impl(const FieldMatrix& A, const FieldMatrix& B,
                       const std::vector<Polynomial>& basis) {
    const std::size_t n = A.size();
    std::vector<Polynomial> fac;
    for (const auto& f : basis)
        if (!f.is_constant()) find_factor_index(fac, f);
    FMatrix a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) clear_row(A[i], B[i], fac, a[i], b[i]);
    // rows cleared before the table was complete may have short exponent rows
    for (auto* m : {&a, &b})
        for (auto& row : *m)
            for (auto& e : row) e.exp.resize(fac.size(), 0);
    bareiss_jordan(a, b, fac);
    FEntry det;
    if (n) {
        det = a[n - 1][n - 1];
    } else {
        det.core = Polynomial::constant(BigRational(1));
    }
    FieldMatrix x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i].reserve(b[i].size());
        for (auto& e : b[i]) x[i].push_back(reduce_entry(std::move(e), det, fac));
    }
    return x;
}

}  // namespace

FieldVector solve_linear(const FieldMatrix& A, const FieldVector& b,
                         const std::vector<Polynomial>& basis) {
    check_square(A);
    if (b.size() != A.size()) throw std::invalid_argument("dimension mismatch");
    FieldMatrix rhs(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) rhs[i] = {b[i]};
    FieldMatrix sol = solve_impl(A, rhs, basis);
    FieldVector x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) x[i] = std::move(sol[i][0]);
    return x;
}

FieldMatrix solve_linear_multi(const FieldMatrix& A, const FieldMatrix& B,
                               const std::vector<Polynomial>& basis) {
    check_square(A);
    if (B.size() != A.size()) throw std::invalid_argument("dimension mismatch");
    return solve_impl(A, B, basis);
}

}  // namespace fc
