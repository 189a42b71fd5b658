#pragma once

#include <map>
#include <string>

#include "fc/linsolve.hpp"
#include "fc/theta.hpp"

namespace fc {

// The five parameters (a, b, c1, c2, c3); entries are expressions in symbols
// other than z1,z2,z3 (typically symbolic parameters, affine eps forms, or
// plain rationals).
struct ParameterVector {
    std::array<RationalFunction, 5> v;

    ParameterVector() = default;
    explicit ParameterVector(std::array<RationalFunction, 5> entries);

    static ParameterVector symbolic();  // (a, b, c1, c2, c3)

    const RationalFunction& a() const { return v[0]; }
    const RationalFunction& b() const { return v[1]; }
    const RationalFunction& c(int i) const { return v[static_cast<std::size_t>(2 + i)]; }

    ParameterVector shifted(int index, int delta) const;

    // canonical text of the five entries, ';'-separated: the cache key
    std::string key() const;

    friend bool operator==(const ParameterVector& x, const ParameterVector& y) {
        return x.v == y.v;
    }
};

// Square-free right sides L_i with th_i^2 F = L_i F, common denominator
// D0 = 1 - z1 - z2 - z3. Derived by solving the three second-order relations
// (1/z_i) th_i (c_i - 1 + th_i) F = (a + th1 + th2 + th3)(b + th1 + th2 + th3) F
// jointly for th1^2, th2^2, th3^2.
struct CanonicalSystem {
    ParameterVector params;
    std::array<NormalOperator, 3> L;  // L[i] = reduction of th_{i+1}^2
};

CanonicalSystem build_canonical_system(const ParameterVector& params);

Polynomial d0_polynomial();  // 1 - z1 - z2 - z3

// the degree-3 companion factor that joins d0 in every z-side denominator
// bound; shows up in the table entries from the squared-monomial stage on
Polynomial dcont_bracket();

// Expression of each of the 12 non-square-free monomials th_i^2, th_i^2 th_j,
// th_i^2 th_j th_k over the 8-element basis, for one parameter vector.
class ReductionTable {
  public:
    using EntryMap = std::map<ThetaMonomial, NormalOperator>;

    explicit ReductionTable(const CanonicalSystem& sys);
    ReductionTable(ParameterVector params, EntryMap entries);  // pre-built (cache load)

    const NormalOperator& at(const ThetaMonomial& m) const;
    bool contains(const ThetaMonomial& m) const { return entries_.count(m) != 0; }
    const EntryMap& entries() const { return entries_; }
    const ParameterVector& params() const { return params_; }

  private:
    ParameterVector params_;
    EntryMap entries_;
};

// NF(th_k . N): one theta factor applied to a basis-form operator.
NormalOperator apply_theta_normal(int k, const NormalOperator& N, const ReductionTable& table);

// Full reduction onto the basis; monomials outside the 12-entry closure are
// peeled one theta at a time, so any exponent triple reduces.
NormalOperator normal_reduce(const ThetaOperator& L, const ReductionTable& table);

// NF(Q . S) where Q's thetas act through S (both in basis form).
NormalOperator compose_normal(const NormalOperator& Q, const NormalOperator& S,
                              const ReductionTable& table);

}  // namespace fc
