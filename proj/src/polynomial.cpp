#include "fc/polynomial.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fc {

SymbolTable& symtab() {
    static SymbolTable tab;
    return tab;
}

void Mono::set_exponent(int var, unsigned e) {
    if (var < 0 || var >= MAX_SYMBOLS)
        throw std::out_of_range("too many distinct symbols for the packed monomial key");
    if (e > MAX_EXPONENT) throw std::overflow_error("monomial exponent out of range");
    Key diff = Key(e) - Key(exponent(var));  // wraps; the shifted adds still land right
    key_ += (diff << shift(var)) + (diff << DEG_SHIFT);
}

int Mono::max_var() const {
    for (int v = MAX_SYMBOLS - 1; v >= 0; --v)
        if (exponent(v)) return v;
    return -1;
}

namespace {
constexpr unsigned __int128 exp_high_bits() {
    unsigned __int128 m = 0;
    for (int i = 0; i < Mono::MAX_SYMBOLS; ++i)
        m |= static_cast<unsigned __int128>(0x80) << (8 * i);
    return m;
}
}  // namespace

Mono mono_mul(const Mono& a, const Mono& b) {
    // when every exponent byte is below 128 the sums cannot carry across lanes
    if (((a.key_ | b.key_) & exp_high_bits()) != 0) {
        for (int v = 0; v < Mono::MAX_SYMBOLS; ++v)
            if (a.exponent(v) + b.exponent(v) > Mono::MAX_EXPONENT)
                throw std::overflow_error("monomial exponent out of range");
    }
    Mono r;
    r.key_ = a.key_ + b.key_;
    return r;
}

bool mono_divides(const Mono& d, const Mono& n) {
    if (d.key_ == 0) return true;
    for (int v = 0; v < Mono::MAX_SYMBOLS; ++v)
        if (d.exponent(v) > n.exponent(v)) return false;
    return true;
}

Mono mono_div(const Mono& n, const Mono& d) {
    Mono r;
    r.key_ = n.key_ - d.key_;  // caller guarantees divisibility, so no lane borrows
    return r;
}

Mono mono_min(const Mono& a, const Mono& b) {
    Mono r;
    for (int v = 0; v < Mono::MAX_SYMBOLS; ++v) {
        unsigned e = std::min(a.exponent(v), b.exponent(v));
        if (e) r.set_exponent(v, e);
    }
    return r;
}

Mono mono_restrict(const Mono& m, std::uint64_t vars) {
    Mono r;
    for (int v = 0; v < Mono::MAX_SYMBOLS; ++v) {
        if (!(vars >> v & 1u)) continue;
        unsigned e = m.exponent(v);
        if (e) r.set_exponent(v, e);
    }
    return r;
}

std::uint64_t mono_var_bits(const Mono& m) {
    std::uint64_t bits = 0;
    for (int v = 0; v < Mono::MAX_SYMBOLS; ++v)
        if (m.exponent(v)) bits |= std::uint64_t{1} << v;
    return bits;
}

Polynomial Polynomial::constant(BigRational c) {
    Polynomial p;
    if (!c.is_zero()) p.terms_.emplace(Mono{}, std::move(c));
    return p;
}

Polynomial Polynomial::variable(int symbol_id) {
    Mono m;
    m.set_exponent(symbol_id, 1);
    return term(m, BigRational(1));
}

Polynomial Polynomial::term(Mono m, BigRational c) {
    Polynomial p;
    if (!c.is_zero()) p.terms_.emplace(m, std::move(c));
    return p;
}

BigRational Polynomial::constant_value() const {
    if (terms_.empty()) return BigRational(0);
    return terms_.begin()->second;
}

unsigned Polynomial::degree_in(int var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
    return d;
}

bool Polynomial::uses_var(int var) const { return degree_in(var) > 0; }

int Polynomial::max_var() const {
    int mv = -1;
    for (const auto& [m, c] : terms_) mv = std::max(mv, m.max_var());
    return mv;
}

void Polynomial::add_term(const Mono& m, const BigRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

namespace {

// big products accumulate in a hash map (tree inserts per pair are the
// bottleneck otherwise), then sort once into term order
using ProductAcc = std::unordered_map<Mono, BigRational, MonoKeyHash>;

void acc_products(ProductAcc& acc, const Polynomial::TermMap& a, const Polynomial::TermMap& b,
                  bool negate) {
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            auto [it, fresh] = acc.try_emplace(mono_mul(ma, mb));
            if (negate)
                it->second -= ca * cb;
            else
                it->second += ca * cb;
        }
    }
}

std::vector<std::pair<Mono, BigRational>> acc_sorted(ProductAcc&& acc) {
    std::vector<std::pair<Mono, BigRational>> v;
    v.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) v.emplace_back(m, std::move(c));
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return v;
}

}  // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    if (a.is_zero() || b.is_zero()) return r;
    // a single-term factor shifts every key by the same amount, keeping order
    if (a.terms_.size() == 1 || b.terms_.size() == 1) {
        const auto& [sm, sc] = a.terms_.size() == 1 ? *a.terms_.begin() : *b.terms_.begin();
        const Polynomial& rest = a.terms_.size() == 1 ? b : a;
        for (const auto& [m, c] : rest.terms_)
            r.terms_.emplace_hint(r.terms_.end(), mono_mul(sm, m), sc * c);
        return r;
    }
    ProductAcc acc;
    acc.reserve(2 * (a.terms_.size() + b.terms_.size()));
    acc_products(acc, a.terms_, b.terms_, false);
    for (auto& [m, c] : acc_sorted(std::move(acc)))
        r.terms_.emplace_hint(r.terms_.end(), m, std::move(c));
    return r;
}

Polynomial mul_sub(const Polynomial& p, const Polynomial& q, const Polynomial& r,
                   const Polynomial& s) {
    if (r.is_zero() || s.is_zero()) return p * q;
    if (p.is_zero() || q.is_zero()) return -(r * s);
    ProductAcc acc;
    acc.reserve(2 * (p.terms_.size() + q.terms_.size() + r.terms_.size() + s.terms_.size()));
    acc_products(acc, p.terms_, q.terms_, false);
    acc_products(acc, r.terms_, s.terms_, true);
    Polynomial out;
    for (auto& [m, c] : acc_sorted(std::move(acc)))
        out.terms_.emplace_hint(out.terms_.end(), m, std::move(c));
    return out;
}

Polynomial Polynomial::scaled(const BigRational& c) const {
    Polynomial r;
    if (c.is_zero()) return r;
    for (const auto& [m, co] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, co * c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(BigRational(1));
    Polynomial base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        unsigned e = m.exponent(var);
        if (e == 0) continue;
        Mono d = m;
        d.set_exponent(var, e - 1);
        r.add_term(d, c * BigRational(static_cast<long>(e)));
    }
    return r;
}

Polynomial Polynomial::eval_partial(const std::map<int, BigRational>& binding) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        BigRational coeff = c;
        Mono rest = m;
        for (const auto& [var, val] : binding) {
            unsigned e = rest.exponent(var);
            if (e == 0) continue;
            for (unsigned k = 0; k < e; ++k) coeff *= val;
            rest.set_exponent(var, 0);
        }
        r.add_term(rest, coeff);
    }
    return r;
}

BigRational Polynomial::signed_content() const {
    if (terms_.empty()) return BigRational(0);
    BigRational g(0);
    for (const auto& [m, c] : terms_) {
        g = BigRational::content_gcd(g, c);
        // no early exit: denominator lcm must still absorb every term
    }
    if (lead_coeff().sign() < 0) g = -g;
    return g;
}

// ---------------------------------------------------------------------------
// gcd machinery
// ---------------------------------------------------------------------------

namespace {

// univariate view of p in variable x: x-degree -> x-free coefficient
using UniView = std::map<unsigned, Polynomial>;

UniView view_in(const Polynomial& p, int x) {
    UniView v;
    for (const auto& [m, c] : p.terms()) {
        unsigned e = m.exponent(x);
        Mono rest = m;
        rest.set_exponent(x, 0);
        auto [it, inserted] = v.try_emplace(e);
        it->second.add_term(rest, c);
    }
    for (auto it = v.begin(); it != v.end();)
        it = it->second.is_zero() ? v.erase(it) : std::next(it);
    return v;
}

Polynomial assemble(const UniView& v, int x) {
    Polynomial p;
    for (const auto& [e, coeff] : v) {
        if (e == 0) {
            p += coeff;
            continue;
        }
        Mono xm;
        xm.set_exponent(x, e);
        p += Polynomial::term(xm, BigRational(1)) * coeff;
    }
    return p;
}

unsigned view_degree(const UniView& v) { return v.empty() ? 0 : v.rbegin()->first; }

UniView view_mul_coeff(const UniView& v, const Polynomial& c) {
    UniView r;
    for (const auto& [e, co] : v) {
        Polynomial p = co * c;
        if (!p.is_zero()) r.emplace(e, std::move(p));
    }
    return r;
}

UniView view_sub(UniView a, const UniView& b) {
    for (const auto& [e, co] : b) {
        auto it = a.find(e);
        if (it == a.end()) {
            a.emplace(e, -co);
        } else {
            it->second -= co;
            if (it->second.is_zero()) a.erase(it);
        }
    }
    return a;
}

// r := lc(g)^k f - (...) g until deg r < deg g
UniView pseudo_rem(UniView f, const UniView& g) {
    unsigned dg = view_degree(g);
    const Polynomial& lg = g.rbegin()->second;
    while (!f.empty() && view_degree(f) >= dg) {
        unsigned df = view_degree(f);
        Polynomial lf = f.rbegin()->second;
        UniView shifted;
        for (const auto& [e, co] : g) shifted.emplace(e + df - dg, co * lf);
        f = view_sub(view_mul_coeff(f, lg), shifted);
    }
    return f;
}

Polynomial content_of_view(const UniView& v) {
    Polynomial g;  // zero
    for (const auto& [e, co] : v) {
        g = poly_gcd(g, co);
        if (g.is_one()) break;
    }
    return g;
}

UniView view_exact_div_coeff(const UniView& v, const Polynomial& c) {
    UniView r;
    for (const auto& [e, co] : v) {
        auto q = try_exact_divide(co, c);
        r.emplace(e, std::move(*q));  // content divides by construction
    }
    return r;
}

// univariate images for the evaluation probe; the gcd degree is computed
// over Z with a primitive pseudo-remainder sequence (plain division over Q
// blows coefficients up exponentially)
using UniRat = std::map<unsigned, BigRational>;
using UniZ = std::map<unsigned, mpz_class>;

unsigned unirat_deg(const UniRat& p) { return p.empty() ? 0 : p.rbegin()->first; }
unsigned uniz_deg(const UniZ& p) { return p.empty() ? 0 : p.rbegin()->first; }

UniZ uniz_from(const UniRat& f) {
    mpz_class l(1);
    for (const auto& [e, c] : f)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
    UniZ r;
    for (const auto& [e, c] : f)
        r.emplace(e, c.numerator() * mpz_class(l / c.denominator()));
    return r;
}

void uniz_primitive(UniZ& f) {
    mpz_class g(0);
    for (const auto& [e, c] : f) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    for (auto& [e, c] : f) c /= g;
}

UniZ uniz_prem(UniZ f, const UniZ& g) {
    unsigned dg = uniz_deg(g);
    const mpz_class& lg = g.rbegin()->second;
    while (!f.empty() && uniz_deg(f) >= dg) {
        unsigned df = uniz_deg(f);
        mpz_class lf = f.rbegin()->second;
        for (auto& [e, c] : f) c *= lg;
        for (const auto& [e, c] : g) {
            unsigned te = e + df - dg;
            auto it = f.find(te);
            if (it == f.end()) {
                f.emplace(te, mpz_class(-(lf * c)));
            } else {
                it->second -= lf * c;
                if (it->second == 0) f.erase(it);
            }
        }
        f.erase(df);
    }
    return f;
}

unsigned uniz_gcd_degree(UniZ f, UniZ g) {
    uniz_primitive(f);
    uniz_primitive(g);
    if (uniz_deg(f) < uniz_deg(g)) f.swap(g);
    while (!g.empty()) {
        UniZ r = uniz_prem(std::move(f), g);
        uniz_primitive(r);
        f = std::move(g);
        g = std::move(r);
    }
    return uniz_deg(f);
}

UniRat project(const Polynomial& p, int x, const std::map<int, BigRational>& pt) {
    Polynomial q = p.eval_partial(pt);
    UniRat r;
    for (const auto& [m, c] : q.terms()) {
        unsigned e = m.exponent(x);
        auto [it, inserted] = r.try_emplace(e, BigRational(0));
        it->second += c;
        if (it->second.is_zero()) r.erase(e);
    }
    return r;
}

Mono common_mono(const Polynomial& p) {
    Mono m;
    bool first = true;
    for (const auto& [mono, c] : p.terms()) {
        if (first) {
            m = mono;
            first = false;
            continue;
        }
        m = mono_min(m, mono);
        if (m.empty()) break;
    }
    return m;
}

Polynomial mono_shift_down(const Polynomial& p, const Mono& m) {
    if (m.empty()) return p;
    Polynomial r;
    for (const auto& [mono, c] : p.terms()) r.add_term(mono_div(mono, m), c);
    return r;
}

Polynomial make_primitive(const Polynomial& p) {
    if (p.is_zero()) return p;
    BigRational c = p.signed_content();
    Polynomial r;
    for (const auto& [m, co] : p.terms()) r.add_term(m, co / c);
    return r;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

Polynomial content_in(const Polynomial& p, int x) {
    return content_of_view(view_in(p, x));
}

// Evaluation probe: returns 1 when the primitive parts are provably coprime
// in x, the candidate divisor when one image degree matches, nothing when
// inconclusive.
std::optional<Polynomial> probe_gcd(const Polynomial& pa, const Polynomial& pb, int x) {
    static const std::array<int, 8> nums = {2, 3, 5, 7, 11, 13, 17, 19};
    static const std::array<int, 8> dens = {3, 5, 7, 11, 13, 17, 19, 23};
    int top = std::max(pa.max_var(), pb.max_var());
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::map<int, BigRational> pt;
        for (int v = 0; v <= top; ++v) {
            if (v == x) continue;
            if (!pa.uses_var(v) && !pb.uses_var(v)) continue;
            std::size_t k = static_cast<std::size_t>(v + 3 * attempt) % nums.size();
            pt.emplace(v, BigRational(nums[k] + attempt, dens[k]));
        }
        UniRat ia = project(pa, x, pt);
        UniRat ib = project(pb, x, pt);
        if (ia.empty() || ib.empty()) continue;
        if (unirat_deg(ia) != pa.degree_in(x)) continue;  // leading coeff vanished
        if (unirat_deg(ib) != pb.degree_in(x)) continue;
        unsigned d = uniz_gcd_degree(uniz_from(ia), uniz_from(ib));
        if (d == 0) return Polynomial::constant(BigRational(1));
        if (d == pb.degree_in(x)) {
            if (auto q = try_exact_divide(pa, pb)) return pb;
        }
        if (d == pa.degree_in(x)) {
            if (auto q = try_exact_divide(pb, pa)) return pa;
        }
        return std::nullopt;  // genuine nontrivial gcd: fall through to the remainder sequence
    }
    return std::nullopt;
}

std::uint64_t var_mask(const Polynomial& p) {
    std::uint64_t mask = 0;
    for (const auto& [m, c] : p.terms()) mask |= mono_var_bits(m);
    return mask;
}

// gcd of the coefficient slices of p grouped by its monomials in the
// `outside` variables; every divisor of p that avoids those variables
// divides each slice, and the fold itself divides p.
Polynomial slice_gcd(const Polynomial& p, std::uint64_t outside) {
    std::map<Mono, Polynomial> groups;
    for (const auto& [m, c] : p.terms()) {
        Mono key = mono_restrict(m, outside);
        groups[key].add_term(mono_div(m, key), c);
    }
    Polynomial g;
    for (const auto& [k, q] : groups) {
        g = poly_gcd(g, q);
        if (g.is_constant()) break;
    }
    return g;
}

// p = X * Y with X inside `block` and Y disjoint from it, if possible
std::optional<std::pair<Polynomial, Polynomial>> split_blocks(const Polynomial& p,
                                                              std::uint64_t block) {
    Polynomial x = slice_gcd(p, ~block);
    if (x.is_constant()) return std::nullopt;
    auto y = try_exact_divide(p, x);
    if (!y || (var_mask(*y) & block)) return std::nullopt;
    return std::make_pair(std::move(x), std::move(*y));
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return make_primitive(b);
    if (b.is_zero()) return make_primitive(a);
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(BigRational(1));

    // restrict both sides to their shared variables first: a divisor of both
    // can only use variables common to both, and slicing turns the search
    // into gcds over that smaller variable set
    const std::uint64_t mask_a = var_mask(a), mask_b = var_mask(b);
    if (mask_a != mask_b) {
        const std::uint64_t common = mask_a & mask_b;
        if (common == 0) return Polynomial::constant(BigRational(1));
        Polynomial ra = (mask_a & ~common) ? slice_gcd(a, mask_a & ~common) : a;
        if (ra.is_constant()) return Polynomial::constant(BigRational(1));
        Polynomial rb = (mask_b & ~common) ? slice_gcd(b, mask_b & ~common) : b;
        if (rb.is_constant()) return Polynomial::constant(BigRational(1));
        return gcd_impl(ra, rb);
    }

    // same mixed variable set: denominators in this codebase separate into a
    // coordinate block times a parameter block, and splitting one operand
    // reduces the job to two disjoint-variable gcds
    const std::uint64_t zmask = (std::uint64_t{1} << SYM_Z1) | (std::uint64_t{1} << SYM_Z2) |
                                (std::uint64_t{1} << SYM_Z3);
    if ((mask_a & zmask) && (mask_a & ~zmask)) {
        for (const Polynomial* cand : {&b, &a}) {
            if (auto sp = split_blocks(*cand, zmask)) {
                const Polynomial& other = cand == &b ? a : b;
                return gcd_impl(other, sp->first) * gcd_impl(other, sp->second);
            }
        }
    }

    int x = std::max(a.max_var(), b.max_var());
    unsigned da = a.degree_in(x), db = b.degree_in(x);
    if (da == 0) return gcd_impl(a, content_in(b, x));
    if (db == 0) return gcd_impl(content_in(a, x), b);

    UniView va = view_in(a, x), vb = view_in(b, x);
    Polynomial ca = content_of_view(va), cb = content_of_view(vb);
    Polynomial cg = gcd_impl(ca, cb);
    Polynomial pa = assemble(view_exact_div_coeff(va, ca), x);
    Polynomial pb = assemble(view_exact_div_coeff(vb, cb), x);

    if (auto probed = probe_gcd(pa, pb, x)) return make_primitive(*probed * cg);

    UniView f = da >= db ? view_in(pa, x) : view_in(pb, x);
    UniView g = da >= db ? view_in(pb, x) : view_in(pa, x);
    while (!g.empty()) {
        UniView r = pseudo_rem(std::move(f), g);
        f = std::move(g);
        if (!r.empty()) {
            Polynomial rc = content_of_view(r);
            g = view_in(make_primitive(assemble(view_exact_div_coeff(r, rc), x)), x);
        } else {
            g.clear();
        }
    }
    Polynomial prim = make_primitive(assemble(f, x));
    if (prim.degree_in(x) == 0) return make_primitive(cg);  // primitive parts coprime in x
    return make_primitive(prim * cg);
}

}  // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() && b.is_zero()) return Polynomial();
    Mono shared;
    if (!a.is_zero() && !b.is_zero()) shared = mono_min(common_mono(a), common_mono(b));
    Polynomial g = gcd_impl(mono_shift_down(a, shared), mono_shift_down(b, shared));
    if (!shared.empty()) g = g * Polynomial::term(shared, BigRational(1));
    return g;
}

std::optional<Polynomial> try_exact_divide(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) return std::nullopt;
    if (num.is_zero()) return Polynomial();
    if (den.is_constant()) return num.scaled(den.constant_value().reciprocal());
    Polynomial q;
    Polynomial r = num;
    const Mono& dm = den.lead_mono();
    const BigRational& dc = den.lead_coeff();
    while (!r.is_zero()) {
        const Mono& rm = r.lead_mono();
        if (!mono_divides(dm, rm)) return std::nullopt;
        Polynomial t = Polynomial::term(mono_div(rm, dm), r.lead_coeff() / dc);
        q += t;
        r -= t * den;
    }
    return q;
}

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    Polynomial g = poly_gcd(a, b);
    Polynomial l = *try_exact_divide(a * b, g);
    BigRational c = l.signed_content();
    Polynomial r;
    for (const auto& [m, co] : l.terms()) r.add_term(m, co / c);
    return r;
}

}  // namespace fc
