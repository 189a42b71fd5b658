#include "fc/engine.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "fc/errors.hpp"
#include "fc/expr.hpp"

namespace fc {

int ShiftVector::component(int i) const {
    switch (i) {
        case 0: return na;
        case 1: return nb;
        case 2: return m1;
        case 3: return m2;
        case 4: return m3;
        default: throw std::out_of_range("shift component index");
    }
}

int ShiftVector::total_steps() const {
    return std::abs(na) + std::abs(nb) + std::abs(m1) + std::abs(m2) + std::abs(m3);
}

namespace {

const char* param_name(int which) {
    static const char* names[5] = {"a", "b", "c1", "c2", "c3"};
    return names[which];
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

NormalOperator direct_operator(int which, StepDirection dir, const ParameterVector& params) {
    if (which < 0 || which > 4) throw std::invalid_argument("parameter index out of range");
    NormalOperator n = NormalOperator::identity();
    if (which <= 1) {
        if (dir != StepDirection::up)
            throw std::invalid_argument("a and b only have closed-form up operators");
        const RationalFunction& x = params.v[static_cast<std::size_t>(which)];
        if (x.is_zero()) throw ExceptionalParameter({param_name(which)});
        RationalFunction inv = x.reciprocal();
        for (int s = 1; s <= 3; ++s) n.c[static_cast<std::size_t>(s)] = inv;
        return n;
    }
    if (dir != StepDirection::down)
        throw std::invalid_argument("c parameters only have closed-form down operators");
    int i = which - 2;
    RationalFunction lead = params.c(i) - RationalFunction(1);
    if (lead.is_zero())
        throw ExceptionalParameter({std::string(param_name(which)) + "-1"});
    n.c[static_cast<std::size_t>(1 + i)] = lead.reciprocal();
    return n;
}

std::vector<RationalFunction> ddiscr_factors(int which, const ParameterVector& params) {
    if (which < 0 || which > 4) throw std::invalid_argument("parameter index out of range");
    const RationalFunction one(1), two(2), three(3);
    RationalFunction csum = params.c(0) + params.c(1) + params.c(2);
    std::vector<RationalFunction> out;
    if (which <= 1) {
        const RationalFunction& x = params.v[static_cast<std::size_t>(which)];
        for (int i = 0; i < 3; ++i) out.push_back(one + x - params.c(i));
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) out.push_back(two + x - params.c(i) - params.c(j));
        out.push_back(three + x - csum);
        return out;
    }
    int i = which - 2;
    for (int p = 0; p < 2; ++p) {
        const RationalFunction& x = params.v[static_cast<std::size_t>(p)];
        out.push_back(one + x - params.c(i));
        for (int j = 0; j < 3; ++j)
            if (j != i) out.push_back(two + x - params.c(i) - params.c(j));
        out.push_back(three + x - csum);
    }
    return out;
}

Polynomial ddiscr_product(int which) {
    if (which < 0 || which > 4) throw std::invalid_argument("parameter index out of range");
    auto var = [](int s) { return Polynomial::variable(s); };
    auto cnum = [](long n) { return Polynomial::constant(BigRational(n)); };
    Polynomial c[3] = {var(SYM_C1), var(SYM_C2), var(SYM_C3)};
    Polynomial csum = c[0] + c[1] + c[2];
    Polynomial prod = cnum(1);
    if (which <= 1) {
        Polynomial x = var(which == 0 ? SYM_A : SYM_B);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                prod *= (cnum(1) + x - c[i]) * (cnum(2) + x - c[i] - c[j]);
            }
        prod *= cnum(3) + x - csum;
        return prod;
    }
    int i = which - 2;
    for (int p : {SYM_A, SYM_B}) {
        Polynomial x = var(p);
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            prod *= (cnum(1) + x - c[i]) * (cnum(2) + x - c[i] - c[j]) * (cnum(3) + x - csum);
        }
    }
    return prod;
}

Polynomial dcont_polynomial() { return dcont_bracket() * d0_polynomial(); }

std::shared_ptr<const ReductionTable> Engine::table_for(const ParameterVector& params) {
    const std::string key = params.key();
    {
        std::shared_lock lk(mu_);
        auto it = tables_.find(key);
        if (it != tables_.end()) return it->second;
    }
    std::shared_ptr<const ReductionTable> built = load_persisted(key);
    if (!built) {
        built = std::make_shared<const ReductionTable>(build_canonical_system(params));
        persist(*built);
    }
    std::unique_lock lk(mu_);
    auto [it, inserted] = tables_.emplace(key, built);
    return it->second;
}

std::shared_ptr<const ReductionTable> Engine::load_persisted(const std::string& key) const {
    const char* dir = std::getenv("FC_CACHE_DIR");
    if (!dir || !*dir) return nullptr;
    std::filesystem::path path = std::filesystem::path(dir) / (fnv1a_hex(key) + ".tbl");
    std::ifstream in(path);
    if (!in) return nullptr;
    try {
        std::string stored;
        if (!std::getline(in, stored) || stored != key) return nullptr;
        std::string line;
        if (!std::getline(in, line)) return nullptr;
        std::size_t count = std::stoul(line);
        ReductionTable::EntryMap entries;
        for (std::size_t e = 0; e < count; ++e) {
            if (!std::getline(in, line)) return nullptr;
            std::istringstream head(line);
            ThetaMonomial m{};
            if (!(head >> m[0] >> m[1] >> m[2])) return nullptr;
            NormalOperator n;
            for (std::size_t s = 0; s < 8; ++s) {
                if (!std::getline(in, line)) return nullptr;
                n.c[s] = parse_expression(line);
            }
            entries.emplace(m, std::move(n));
        }
        // reconstruct the ParameterVector from the key itself
        std::array<RationalFunction, 5> pv;
        std::size_t start = 0;
        for (std::size_t i = 0; i < 5; ++i) {
            std::size_t sep = key.find(';', start);
            std::string piece =
                key.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
            pv[i] = parse_expression(piece);
            start = sep + 1;
        }
        return std::make_shared<const ReductionTable>(ParameterVector(pv), std::move(entries));
    } catch (...) {
        return nullptr;  // damaged cache entries are just misses
    }
}

void Engine::persist(const ReductionTable& table) const {
    const char* dir = std::getenv("FC_CACHE_DIR");
    if (!dir || !*dir) return;
    try {
        std::filesystem::create_directories(dir);
        const std::string key = table.params().key();
        std::filesystem::path path = std::filesystem::path(dir) / (fnv1a_hex(key) + ".tbl");
        std::filesystem::path tmp = path;
        tmp += ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp);
            if (!out) return;
            out << key << '\n' << table.entries().size() << '\n';
            for (const auto& [m, n] : table.entries()) {
                out << m[0] << ' ' << m[1] << ' ' << m[2] << '\n';
                for (std::size_t s = 0; s < 8; ++s) out << to_string(n.c[s]) << '\n';
            }
        }
        std::filesystem::rename(tmp, path);
    } catch (...) {
        // persistence is best-effort; the in-memory cache still works
    }
}

NormalOperator Engine::inverse_operator(int which, const ParameterVector& params,
                                        const ReductionTable& table) {
    NormalOperator D = which <= 1 ? direct_operator(which, StepDirection::up, params)
                                  : direct_operator(which, StepDirection::down, params);
    // columns NF(theta^alpha . D) in basis order, built incrementally
    std::array<NormalOperator, 8> col;
    col[0] = D;
    col[1] = apply_theta_normal(0, D, table);
    col[2] = apply_theta_normal(1, D, table);
    col[3] = apply_theta_normal(2, D, table);
    col[4] = apply_theta_normal(0, col[2], table);
    col[5] = apply_theta_normal(0, col[3], table);
    col[6] = apply_theta_normal(1, col[3], table);
    col[7] = apply_theta_normal(0, col[6], table);

    FieldMatrix A(8, FieldVector(8));
    for (std::size_t t = 0; t < 8; ++t)
        for (std::size_t s = 0; s < 8; ++s) A[t][s] = col[s].c[t];
    FieldVector rhs(8);
    rhs[0] = RationalFunction(1);

    // candidate denominator factors of the solution: the z-side continuous
    // factors, the parameter-side discriminant factors, the direct
    // operator's own leading factor, and the coordinates themselves
    std::vector<Polynomial> basis = known_denominator_factors();
    for (const auto& f : ddiscr_factors(which, params)) {
        if (f.num().is_constant()) continue;
        bool seen = false;
        for (const auto& g : basis) seen = seen || g == f.num();
        if (!seen) basis.push_back(f.num());
    }
    {
        RationalFunction lead = which <= 1 ? (which == 0 ? params.a() : params.b())
                                           : params.c(which - 2) - RationalFunction(1);
        if (!lead.num().is_constant()) basis.push_back(lead.num());
    }
    for (int zv : {SYM_Z1, SYM_Z2, SYM_Z3}) basis.push_back(Polynomial::variable(zv));

    FieldVector u;
    try {
        u = solve_linear(A, rhs, basis);
    } catch (const SingularSystem&) {
        std::vector<RationalFunction> vals = ddiscr_factors(which, params);
        std::vector<RationalFunction> names = ddiscr_factors(which, ParameterVector::symbolic());
        std::vector<std::string> vanishing;
        for (std::size_t k = 0; k < vals.size(); ++k)
            if (vals[k].is_zero()) vanishing.push_back(to_string(names[k]));
        if (vanishing.empty()) vanishing.push_back("singular inverse system");
        throw ExceptionalParameter(vanishing);
    }
    NormalOperator U;
    for (std::size_t s = 0; s < 8; ++s) U.c[s] = u[s];
    return U;
}

NormalOperator Engine::inverse_operator(int which, const ParameterVector& params) {
    const std::string key = std::to_string(which) + '|' + params.key();
    {
        std::shared_lock lk(mu_);
        auto it = inverses_.find(key);
        if (it != inverses_.end()) return it->second;
    }
    auto table = table_for(params);
    NormalOperator U = inverse_operator(which, params, *table);
    std::unique_lock lk(mu_);
    auto [it, inserted] = inverses_.emplace(key, std::move(U));
    return it->second;
}

ReductionResult Engine::index_change(const ShiftVector& shift, const ParameterVector& params) {
    NormalOperator Q = NormalOperator::identity();
    ParameterVector cur = params;
    int step = 0;
    for (int idx = 0; idx < 5; ++idx) {
        int n = shift.component(idx);
        int d = n > 0 ? 1 : -1;
        for (int k = 0; k < std::abs(n); ++k) {
            ++step;
            ParameterVector next = cur.shifted(idx, d);
            try {
                NormalOperator S;
                bool direct = (idx <= 1) ? (d < 0) : (d > 0);
                if (direct) {
                    // the closed-form map from `next` back up (a,b) or down (c)
                    StepDirection dir = idx <= 1 ? StepDirection::up : StepDirection::down;
                    S = direct_operator(idx, dir, next);
                } else {
                    S = inverse_operator(idx, cur);
                }
                Q = compose_normal(Q, S, *table_for(next));
            } catch (const ExceptionalParameter& e) {
                if (e.step < 0) throw ExceptionalParameter(e.factors, step);
                throw;
            } catch (const SingularSystem& e) {
                throw ExceptionalParameter({e.what()}, step);
            }
            cur = next;
        }
    }
    return ReductionResult{std::move(Q), std::move(cur)};
}

std::vector<std::string> Engine::check_exceptional(const ShiftVector& shift,
                                                   const ParameterVector& params) const {
    std::vector<std::string> flagged;
    ParameterVector cur = params;
    ParameterVector sym = ParameterVector::symbolic();
    for (int idx = 0; idx < 5; ++idx) {
        int n = shift.component(idx);
        int d = n > 0 ? 1 : -1;
        for (int k = 0; k < std::abs(n); ++k) {
            std::vector<RationalFunction> vals = ddiscr_factors(idx, cur);
            std::vector<RationalFunction> names = ddiscr_factors(idx, sym);
            for (std::size_t f = 0; f < vals.size(); ++f) {
                if (!vals[f].is_zero()) continue;
                std::string name = to_string(names[f]);
                if (std::find(flagged.begin(), flagged.end(), name) == flagged.end())
                    flagged.push_back(name);
            }
            cur = cur.shifted(idx, d);
            sym = sym.shifted(idx, d);
        }
    }
    return flagged;
}

}  // namespace fc
