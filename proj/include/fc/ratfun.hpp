#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fc/polynomial.hpp"

namespace fc {

// Quotient of polynomials in canonical form: gcd(num, den) a unit, den
// integer-primitive with positive leading coefficient under graded lex
// (all rational content lives in num), zero represented as 0/1.
//
// The denominator is additionally held as a list of factors with exponents
// (den == product of fac^e). Every denominator this calculus produces is a
// product of a few fixed shapes, so sums and products cancel by exact
// division against those factors instead of polynomial gcds — the gcd only
// ever sees small residues that come from user-written expressions.
class RationalFunction {
  public:
    using FactorList = std::vector<std::pair<Polynomial, unsigned>>;

    RationalFunction() : den_(Polynomial::constant(BigRational(1))) {}
    RationalFunction(Polynomial num, Polynomial den);  // normalizes
    explicit RationalFunction(Polynomial num)
        : num_(std::move(num)), den_(Polynomial::constant(BigRational(1))) {}
    RationalFunction(long n) : RationalFunction(Polynomial::constant(BigRational(n))) {}  // NOLINT
    explicit RationalFunction(BigRational q)
        : RationalFunction(Polynomial::constant(std::move(q))) {}

    static RationalFunction variable(int symbol_id) {
        return RationalFunction(Polynomial::variable(symbol_id));
    }

    // For callers that already hold a coprime num/den pair; skips the gcd,
    // still normalizes content and splits the denominator into factors.
    static RationalFunction from_reduced(Polynomial num, Polynomial den);

    // Builds num / prod(factors^e) directly from a factor list; cancels
    // factors that divide the numerator. No gcd is involved.
    static RationalFunction from_factored(Polynomial num, FactorList factors);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const FactorList& den_factors() const { return fac_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    BigRational constant_value() const { return num_.constant_value(); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction reciprocal() const;

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    bool uses_var(int var) const { return num_.uses_var(var) || den_.uses_var(var); }

    friend RationalFunction theta_apply(int var, const RationalFunction& f);

  private:
    Polynomial num_, den_;
    FactorList fac_;
    // splits den_ into factors; cancel_num also divides factors out of num_,
    // reduce_opaque runs one small gcd against an unrecognized residue
    void split_den(bool cancel_num, bool reduce_opaque);
    void cancel_and_rebuild();
};

inline RationalFunction rat_normalize(Polynomial num, Polynomial den) {
    return RationalFunction(std::move(num), std::move(den));
}

// The denominator shapes every operator in this library is built from:
// index 0 is 1 - z1 - z2 - z3, index 1 its degree-3 companion, index 2 the
// square-root branch quartic, then the three pair loci. Declared here because
// fraction canonicalization recognizes them during factor splitting.
const std::vector<Polynomial>& known_denominator_factors();

// z_i * d/dz_i, quotient rule, result canonical. var is a symbol id.
RationalFunction theta_apply(int var, const RationalFunction& f);

// Exact substitution of numbers for symbols; unbound symbols stay symbolic.
RationalFunction substitute(const RationalFunction& f, const std::map<int, BigRational>& binding);

// Full numeric evaluation; throws EvaluationFailure if symbols remain after
// binding, DivisionByZero on a vanishing denominator.
BigRational evaluate(const RationalFunction& f, const std::map<int, BigRational>& binding);

using FieldVector = std::vector<RationalFunction>;
using FieldMatrix = std::vector<FieldVector>;

}  // namespace fc
