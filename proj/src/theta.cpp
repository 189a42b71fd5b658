#include "fc/theta.hpp"

namespace fc {

ThetaOperator ThetaOperator::coefficient(RationalFunction f) {
    ThetaOperator t;
    t.add({0, 0, 0}, f);
    return t;
}

ThetaOperator ThetaOperator::theta(int k) {
    ThetaOperator t;
    ThetaMonomial m{0, 0, 0};
    m[static_cast<std::size_t>(k)] = 1;
    t.add(m, RationalFunction(1));
    return t;
}

void ThetaOperator::add(const ThetaMonomial& m, const RationalFunction& f) {
    if (f.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, f);
    } else {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NormalOperator ThetaOperator::to_normal_unchecked(const ThetaOperator& L) {
    NormalOperator n;
    for (const auto& [m, f] : L.terms_) n.c[static_cast<std::size_t>(slot_of(m))] += f;
    return n;
}

ThetaOperator ThetaOperator::from_normal(const NormalOperator& n) {
    ThetaOperator t;
    for (std::size_t s = 0; s < 8; ++s)
        if (!n.c[s].is_zero()) t.add(BASIS[s], n.c[s]);
    return t;
}

ThetaOperator apply_theta_op(int k, const ThetaOperator& M) {
    ThetaOperator r;
    for (const auto& [m, f] : M.terms()) {
        r.add(m, theta_apply(theta_symbol(k), f));
        ThetaMonomial up = m;
        up[static_cast<std::size_t>(k)] += 1;
        r.add(up, f);
    }
    return r;
}

ThetaOperator op_compose(const ThetaOperator& L, const ThetaOperator& M) {
    ThetaOperator out;
    for (const auto& [lm, lf] : L.terms()) {
        ThetaOperator cur = M;
        for (int k = 0; k < 3; ++k)
            for (int e = 0; e < lm[static_cast<std::size_t>(k)]; ++e) cur = apply_theta_op(k, cur);
        for (const auto& [m, f] : cur.terms()) out.add(m, lf * f);
    }
    return out;
}

std::string to_string(const ThetaMonomial& m) {
    std::string s;
    for (int k = 0; k < 3; ++k) {
        for (int e = 0; e < m[static_cast<std::size_t>(k)]; ++e) {
            s += "th";
            s += std::to_string(k + 1);
        }
    }
    return s.empty() ? "1" : s;
}

}  // namespace fc
