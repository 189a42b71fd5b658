#include "fc/ratfun.hpp"

#include <utility>

#include "fc/errors.hpp"
#include "fc/symbols.hpp"

namespace fc {

namespace {

Polynomial poly_one() { return Polynomial::constant(BigRational(1)); }

int find_factor(const RationalFunction::FactorList& l, const Polynomial& f) {
    for (std::size_t i = 0; i < l.size(); ++i)
        if (l[i].first == f) return static_cast<int>(i);
    return -1;
}

Polynomial factor_product(const RationalFunction::FactorList& l) {
    Polynomial p = poly_one();
    for (const auto& [f, e] : l) p = p * f.pow(e);
    return p;
}

}  // namespace

const std::vector<Polynomial>& known_denominator_factors() {
    static const std::vector<Polynomial> shapes = [] {
        auto z = [](int k) { return Polynomial::variable(SYM_Z1 + k); };
        Polynomial d0 = Polynomial::constant(BigRational(1));
        for (int k = 0; k < 3; ++k) d0 -= z(k);
        Polynomial br = Polynomial::constant(BigRational(-1));
        for (int k = 0; k < 3; ++k)
            br += z(k).scaled(BigRational(3)) - (z(k) * z(k)).scaled(BigRational(3)) +
                  z(k) * z(k) * z(k);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                br -= z(i) * z(i) * z(j) + z(i) * z(j);
            }
        br += (z(0) * z(1) * z(2)).scaled(BigRational(10));
        std::vector<Polynomial> out{d0, br};
        // quartic where all eight branches of the square-root substitution
        // z_k = w_k^2 meet: prod over signs of (1 +- w1 +- w2 +- w3)
        Polynomial s = Polynomial::constant(BigRational(1)) + z(0) + z(1) - z(2);
        Polynomial u = s * s + (z(0) * z(1)).scaled(BigRational(4)) -
                       z(0).scaled(BigRational(4)) - z(1).scaled(BigRational(4));
        Polynomial v = z(0) + z(1) - z(2) - Polynomial::constant(BigRational(1));
        out.push_back(u * u - (z(0) * z(1) * v * v).scaled(BigRational(16)));
        // pair loci (1 - z1 - z2 - z3)^2 - 4 z_i z_j
        Polynomial d0sq = d0 * d0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                out.push_back(d0sq - (z(i) * z(j)).scaled(BigRational(4)));
        return out;
    }();
    return shapes;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero();
    split_den(true, true);
}

RationalFunction RationalFunction::from_reduced(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw DivisionByZero();
    RationalFunction r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.split_den(false, false);
    return r;
}

RationalFunction RationalFunction::from_factored(Polynomial num, FactorList factors) {
    RationalFunction r;
    r.num_ = std::move(num);
    for (auto& [f, e] : factors) {
        if (f.is_zero()) throw DivisionByZero();
        if (e == 0) continue;
        BigRational c = f.signed_content();
        if (!c.is_one()) {
            f = f.scaled(c.reciprocal());
            BigRational scale(1);
            for (unsigned k = 0; k < e; ++k) scale *= c;
            r.num_ = r.num_.scaled(scale.reciprocal());
        }
        if (f.is_one()) continue;
        int at = find_factor(r.fac_, f);
        if (at >= 0)
            r.fac_[static_cast<std::size_t>(at)].second += e;
        else
            r.fac_.emplace_back(std::move(f), e);
    }
    r.cancel_and_rebuild();
    return r;
}

// den_ -> factor list: rational content into num, per-variable monomial
// factors, the well-known shapes, then whatever residue remains as one
// opaque factor (optionally reduced against num with a gcd).
void RationalFunction::split_den(bool cancel_num, bool reduce_opaque) {
    fac_.clear();
    if (num_.is_zero()) {
        den_ = poly_one();
        return;
    }
    BigRational cont = den_.signed_content();
    if (!cont.is_one()) {
        BigRational inv = cont.reciprocal();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
    if (den_.is_one()) return;

    Polynomial rest = den_;
    auto strip = [&](const Polynomial& f) {
        unsigned e = 0;
        while (!rest.is_constant()) {
            auto q = try_exact_divide(rest, f);
            if (!q) break;
            rest = std::move(*q);
            ++e;
        }
        if (e) fac_.emplace_back(f, e);
    };
    for (int v = 0; v <= rest.max_var(); ++v)
        if (rest.uses_var(v)) strip(Polynomial::variable(v));
    for (const Polynomial& f : known_denominator_factors())
        if (!rest.is_constant()) strip(f);

    int opaque = -1;
    if (!rest.is_constant()) {
        // residue is primitive with positive lead (quotients of primitives)
        opaque = static_cast<int>(fac_.size());
        fac_.emplace_back(std::move(rest), 1u);
    } else if (!rest.constant_value().is_one()) {
        BigRational inv = rest.constant_value().reciprocal();
        num_ = num_.scaled(inv);
    }

    if (cancel_num) {
        for (auto& [f, e] : fac_) {
            while (e > 0) {
                auto q = try_exact_divide(num_, f);
                if (!q) break;
                num_ = std::move(*q);
                --e;
            }
        }
    }
    if (reduce_opaque && opaque >= 0) {
        auto& [f, e] = fac_[static_cast<std::size_t>(opaque)];
        if (e > 0 && !num_.is_constant()) {
            Polynomial g = poly_gcd(num_, f);
            if (!g.is_constant()) {
                num_ = *try_exact_divide(num_, g);
                f = *try_exact_divide(f, g);
                BigRational c = f.signed_content();
                if (!c.is_one()) {
                    f = f.scaled(c.reciprocal());
                    num_ = num_.scaled(c.reciprocal());
                }
                if (f.is_one()) e = 0;
            }
        }
    }
    for (auto it = fac_.begin(); it != fac_.end();)
        it = it->second == 0 ? fac_.erase(it) : std::next(it);
    den_ = factor_product(fac_);
}

// cancels factors dividing num_ and recomputes den_; factors are assumed
// primitive with positive lead already
void RationalFunction::cancel_and_rebuild() {
    if (num_.is_zero()) {
        den_ = poly_one();
        fac_.clear();
        return;
    }
    for (auto& [f, e] : fac_) {
        while (e > 0) {
            auto q = try_exact_divide(num_, f);
            if (!q) break;
            num_ = std::move(*q);
            --e;
        }
    }
    for (auto it = fac_.begin(); it != fac_.end();)
        it = it->second == 0 ? fac_.erase(it) : std::next(it);
    den_ = factor_product(fac_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r;
    r.num_ = -num_;
    r.den_ = den_;
    r.fac_ = fac_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RationalFunction r;
    if (a.den_ == b.den_) {
        r.num_ = a.num_ + b.num_;
        r.fac_ = a.fac_;
    } else {
        // common denominator by factor multiset union, no gcd involved
        RationalFunction::FactorList uni = a.fac_;
        for (const auto& [f, e] : b.fac_) {
            int at = find_factor(uni, f);
            if (at < 0)
                uni.emplace_back(f, e);
            else if (uni[static_cast<std::size_t>(at)].second < e)
                uni[static_cast<std::size_t>(at)].second = e;
        }
        Polynomial ma = poly_one(), mb = poly_one();
        for (const auto& [f, e] : uni) {
            int ia = find_factor(a.fac_, f);
            unsigned ea = ia < 0 ? 0 : a.fac_[static_cast<std::size_t>(ia)].second;
            int ib = find_factor(b.fac_, f);
            unsigned eb = ib < 0 ? 0 : b.fac_[static_cast<std::size_t>(ib)].second;
            if (e > ea) ma = ma * f.pow(e - ea);
            if (e > eb) mb = mb * f.pow(e - eb);
        }
        r.num_ = a.num_ * ma + b.num_ * mb;
        r.fac_ = std::move(uni);
    }
    r.cancel_and_rebuild();
    return r;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction();
    RationalFunction r;
    r.num_ = a.num_ * b.num_;
    r.fac_ = a.fac_;
    for (const auto& [f, e] : b.fac_) {
        int at = find_factor(r.fac_, f);
        if (at < 0)
            r.fac_.emplace_back(f, e);
        else
            r.fac_[static_cast<std::size_t>(at)].second += e;
    }
    r.cancel_and_rebuild();
    return r;
}

RationalFunction RationalFunction::reciprocal() const {
    if (is_zero()) throw DivisionByZero();
    RationalFunction r;
    r.num_ = den_;
    r.den_ = num_;
    r.split_den(false, false);  // num/den coprime by invariant
    return r;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZero();
    return a * b.reciprocal();
}

RationalFunction theta_apply(int var, const RationalFunction& f) {
    Polynomial zvar = Polynomial::variable(var);
    Polynomial dn = f.num_.derivative(var);
    if (f.den_.is_one()) {
        RationalFunction r;
        r.num_ = zvar * dn;
        return r;
    }
    // z (n/D)' over D = prod f_i^e_i: the common denominator only needs one
    // extra power of each factor that uses var
    RationalFunction::FactorList fac = f.fac_;
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < fac.size(); ++i)
        if (fac[i].first.uses_var(var)) live.push_back(i);
    if (live.empty()) {
        RationalFunction r;
        r.num_ = zvar * dn;
        r.fac_ = std::move(fac);
        r.cancel_and_rebuild();
        return r;
    }
    Polynomial all_live = poly_one();
    for (std::size_t i : live) all_live = all_live * fac[i].first;
    Polynomial acc = dn * all_live;
    for (std::size_t i : live) {
        Polynomial others = poly_one();
        for (std::size_t j : live)
            if (j != i) others = others * fac[j].first;
        acc -= f.num_ * fac[i].first.derivative(var) * others
                   .scaled(BigRational(static_cast<long>(fac[i].second)));
    }
    for (std::size_t i : live) fac[i].second += 1;
    RationalFunction r;
    r.num_ = zvar * acc;
    r.fac_ = std::move(fac);
    r.cancel_and_rebuild();
    return r;
}

RationalFunction substitute(const RationalFunction& f, const std::map<int, BigRational>& binding) {
    Polynomial n = f.num().eval_partial(binding);
    Polynomial d = f.den().eval_partial(binding);
    if (d.is_zero()) throw DivisionByZero("substitution annihilates the denominator");
    return RationalFunction(std::move(n), std::move(d));
}

BigRational evaluate(const RationalFunction& f, const std::map<int, BigRational>& binding) {
    RationalFunction r = substitute(f, binding);
    if (!r.is_constant()) {
        int v = std::max(r.num().max_var(), r.den().max_var());
        throw EvaluationFailure("unbound symbol '" + symtab().name(v) + "' in evaluation");
    }
    return r.constant_value();
}

}  // namespace fc
