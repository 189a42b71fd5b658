#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fc/rational.hpp"
#include "fc/symbols.hpp"

namespace fc {

// Exponent vector packed into one 128-bit key: the top 16 bits hold the total
// degree, the low 14 bytes one exponent each with symbol 0 most significant.
// Unsigned comparison of keys is then graded lexicographic (total degree
// first, then symbol 0, smaller exponent sorting lower), which fixes term
// print order and the canonical sign. Multiplication is a single integer add.
class Mono {
  public:
    static constexpr int MAX_SYMBOLS = 14;
    static constexpr unsigned MAX_EXPONENT = 255;

    Mono() = default;  // empty product

    bool empty() const { return key_ == 0; }
    unsigned degree() const { return static_cast<unsigned>(key_ >> DEG_SHIFT); }
    unsigned exponent(int var) const {
        return var < 0 || var >= MAX_SYMBOLS
                   ? 0u
                   : static_cast<unsigned>(key_ >> shift(var)) & 0xffu;
    }
    void set_exponent(int var, unsigned e);  // throws on var or exponent out of range
    int max_var() const;                     // largest symbol with nonzero exponent, -1 if none

    friend bool operator==(const Mono& a, const Mono& b) { return a.key_ == b.key_; }
    friend bool operator!=(const Mono& a, const Mono& b) { return a.key_ != b.key_; }
    friend bool operator<(const Mono& a, const Mono& b) { return a.key_ < b.key_; }

    friend Mono mono_mul(const Mono& a, const Mono& b);     // throws past MAX_EXPONENT
    friend bool mono_divides(const Mono& d, const Mono& n); // d | n componentwise
    friend Mono mono_div(const Mono& n, const Mono& d);     // requires mono_divides(d, n)
    friend Mono mono_min(const Mono& a, const Mono& b);     // componentwise minimum
    friend Mono mono_restrict(const Mono& m, std::uint64_t vars);  // keep only these symbols
    friend std::uint64_t mono_var_bits(const Mono& m);      // bit i set iff symbol i appears

  private:
    using Key = unsigned __int128;
    static constexpr int DEG_SHIFT = 8 * MAX_SYMBOLS;
    static constexpr int shift(int var) { return 8 * (MAX_SYMBOLS - 1 - var); }
    Key key_ = 0;

    friend struct MonoKeyHash;
};

inline unsigned mono_degree(const Mono& m) { return m.degree(); }

struct MonoKeyHash {
    std::size_t operator()(const Mono& m) const {
        std::uint64_t x = static_cast<std::uint64_t>(m.key_) ^
                          (static_cast<std::uint64_t>(m.key_ >> 64) * 0x9e3779b97f4a7c15ULL);
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return static_cast<std::size_t>(x);
    }
};

// Sparse multivariate polynomial over BigRational. No zero coefficients are
// ever stored.
class Polynomial {
  public:
    using TermMap = std::map<Mono, BigRational>;

    Polynomial() = default;
    static Polynomial constant(BigRational c);
    static Polynomial variable(int symbol_id);
    static Polynomial term(Mono m, BigRational c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    BigRational constant_value() const;  // requires is_constant()
    bool is_one() const { return is_constant() && constant_value().is_one(); }

    std::size_t term_count() const { return terms_.size(); }
    unsigned total_degree() const { return terms_.empty() ? 0 : mono_degree(terms_.rbegin()->first); }
    unsigned degree_in(int var) const;
    bool uses_var(int var) const;
    int max_var() const;  // largest symbol id present, -1 if constant

    const Mono& lead_mono() const { return terms_.rbegin()->first; }
    const BigRational& lead_coeff() const { return terms_.rbegin()->second; }

    const TermMap& terms() const { return terms_; }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial mul_sub(const Polynomial& p, const Polynomial& q, const Polynomial& r,
                              const Polynomial& s);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial scaled(const BigRational& c) const;
    Polynomial pow(unsigned e) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // d/dvar, then times nothing: plain partial derivative.
    Polynomial derivative(int var) const;

    // Substitute numbers for some symbols; the rest stay symbolic.
    Polynomial eval_partial(const std::map<int, BigRational>& binding) const;

    // gcd of all coefficients with the sign of the leading one: the unique
    // rational c such that (*this)/c has coprime integer coefficients and a
    // positive leading coefficient.
    BigRational signed_content() const;

    void add_term(const Mono& m, const BigRational& c);  // merges, drops zeros

  private:
    TermMap terms_;
};

// p*q - r*s accumulated in one pass; the workhorse of fraction-free
// elimination.
Polynomial mul_sub(const Polynomial& p, const Polynomial& q, const Polynomial& r,
                   const Polynomial& s);

// Primitive gcd: integer-primitive, positive leading coefficient. gcd with a
// zero argument returns the other argument's primitive part; gcd of two zeros
// is zero.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

// Exact division: returns the quotient when den divides num exactly.
std::optional<Polynomial> try_exact_divide(const Polynomial& num, const Polynomial& den);

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b);

}  // namespace fc
