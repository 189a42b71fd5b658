#pragma once

#include <array>
#include <map>

#include "fc/expr.hpp"
#include "fc/ratfun.hpp"

namespace fc {

// Exponent triple of a theta monomial th1^e1 th2^e2 th3^e3. Variable k acts
// on z_{k+1}; theta ids 0,1,2 map to symbols z1,z2,z3.
using ThetaMonomial = std::array<int, 3>;

inline int theta_symbol(int k) { return SYM_Z1 + k; }

inline int theta_mask(const ThetaMonomial& m) {
    return (m[0] ? 1 : 0) | (m[1] ? 2 : 0) | (m[2] ? 4 : 0);
}

inline bool square_free(const ThetaMonomial& m) {
    return m[0] <= 1 && m[1] <= 1 && m[2] <= 1;
}

// Basis order 1, th1, th2, th3, th1th2, th1th3, th2th3, th1th2th3.
inline constexpr std::array<ThetaMonomial, 8> BASIS = {{
    {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
    {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
}};
inline constexpr std::array<int, 8> MASK_TO_SLOT = {0, 1, 2, 4, 3, 5, 6, 7};

inline int slot_of(const ThetaMonomial& m) { return MASK_TO_SLOT[static_cast<std::size_t>(theta_mask(m))]; }

// Coefficient vector over the 8-element basis.
struct NormalOperator {
    std::array<RationalFunction, 8> c;

    static NormalOperator identity() {
        NormalOperator n;
        n.c[0] = RationalFunction(1);
        return n;
    }
    static NormalOperator basis_vector(int slot) {
        NormalOperator n;
        n.c[static_cast<std::size_t>(slot)] = RationalFunction(1);
        return n;
    }

    RationalFunction& operator[](std::size_t i) { return c[i]; }
    const RationalFunction& operator[](std::size_t i) const { return c[i]; }

    NormalOperator& operator+=(const NormalOperator& o) {
        for (std::size_t i = 0; i < 8; ++i)
            if (!o.c[i].is_zero()) c[i] += o.c[i];
        return *this;
    }
    NormalOperator scaled(const RationalFunction& f) const {
        NormalOperator n;
        if (f.is_zero()) return n;
        for (std::size_t i = 0; i < 8; ++i)
            if (!c[i].is_zero()) n.c[i] = c[i] * f;
        return n;
    }
    friend bool operator==(const NormalOperator& x, const NormalOperator& y) { return x.c == y.c; }
};

// Finite sum of rational-function coefficients standing left of theta
// monomials; composition normal-orders eagerly through the commutation rule
// th_k f = f th_k + th_k(f).
class ThetaOperator {
  public:
    using TermMap = std::map<ThetaMonomial, RationalFunction>;

    ThetaOperator() = default;
    static ThetaOperator identity() { return coefficient(RationalFunction(1)); }
    static ThetaOperator coefficient(RationalFunction f);
    static ThetaOperator theta(int k);  // k in {0,1,2}

    void add(const ThetaMonomial& m, const RationalFunction& f);
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend ThetaOperator operator+(ThetaOperator x, const ThetaOperator& y) {
        for (const auto& [m, f] : y.terms_) x.add(m, f);
        return x;
    }

    friend bool operator==(const ThetaOperator& x, const ThetaOperator& y) {
        return x.terms_ == y.terms_;
    }

    static NormalOperator to_normal_unchecked(const ThetaOperator& L);  // requires square-free terms
    static ThetaOperator from_normal(const NormalOperator& n);

  private:
    TermMap terms_;
};

// th_k . M for a single theta factor.
ThetaOperator apply_theta_op(int k, const ThetaOperator& M);

// L . M with L's coefficients untouched (they stand leftmost).
ThetaOperator op_compose(const ThetaOperator& L, const ThetaOperator& M);

std::string to_string(const ThetaMonomial& m);

}  // namespace fc
