#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fc/engine.hpp"
#include "fc/rational.hpp"

namespace fc {

// Which index region a truncated sum keeps. Per-variable (each m_i <= order)
// is the default everywhere: it is the reading under which the reference
// values 1.34179 and 1.35774 are reproduced (see README); the total-degree
// region (m1+m2+m3 <= order) stays available for comparison.
enum class Truncation { per_variable, total_degree };

// partial: d/dz_i derivatives of the full series, then truncation.
// theta:   z_i d/dz_i derivatives (weight m_i^{d_i} per term).
enum class DerivMode { partial, theta };

struct SeriesRequest {
    std::array<BigRational, 5> params;  // a, b, c1, c2, c3
    std::array<BigRational, 3> z;
    int order = 0;
    std::array<int, 3> deriv{0, 0, 0};
    Truncation truncation = Truncation::per_variable;
    DerivMode mode = DerivMode::partial;
};

namespace detail {

template <typename Num>
Num num_from(const BigRational& q) {
    if constexpr (std::is_same_v<Num, BigRational>)
        return q;
    else
        return static_cast<Num>(q.to_double());
}

// Scans every retained term of the (derivative-offset) series and hands
// (k1,k2,k3, term) to the accumulator. With offsets d the term is
//   (a)_{K+D}(b)_{K+D} / prod_i (c_i)_{k_i+d_i} * prod_i z_i^{k_i}/k_i!
// which is exactly the k-th coefficient of d^D F / dz^d times z^k.
template <typename Num, typename Acc>
void fc_scan(const std::array<Num, 5>& p, const std::array<Num, 3>& z, int order, Truncation tr,
             const std::array<int, 3>& d, Acc&& acc) {
    if (order < 0) throw std::invalid_argument("series order must be nonnegative");
    const Num zero(0);
    const Num &a = p[0], &b = p[1];
    auto pole = [](int ci, int off) {
        throw PoleInParameter("pochhammer denominator (c" + std::to_string(ci + 1) + " + " +
                              std::to_string(off) + ") vanishes");
    };

    Num t0(1);
    int D = d[0] + d[1] + d[2];
    for (int n = 0; n < D; ++n) t0 *= (a + Num(n)) * (b + Num(n));
    for (int i = 0; i < 3; ++i)
        for (int n = 0; n < d[i]; ++n) {
            Num den = p[2 + i] + Num(n);
            if (den == zero) pole(i, n);
            t0 /= den;
        }

    const bool live1 = !(z[0] == zero), live2 = !(z[1] == zero), live3 = !(z[2] == zero);
    const int b1 = live1 ? order : 0;
    Num t1 = t0;
    for (int k1 = 0;; ++k1) {
        const int b2 = live2 ? (tr == Truncation::total_degree ? order - k1 : order) : 0;
        Num t2 = t1;
        for (int k2 = 0;; ++k2) {
            const int b3 =
                live3 ? (tr == Truncation::total_degree ? order - k1 - k2 : order) : 0;
            Num t3 = t2;
            for (int k3 = 0;; ++k3) {
                acc(k1, k2, k3, t3);
                if (k3 >= b3) break;
                int K = k1 + k2 + k3;
                Num den = (p[4] + Num(k3 + d[2])) * Num(k3 + 1);
                if (den == zero) pole(2, k3 + d[2]);
                t3 *= (a + Num(K + D)) * (b + Num(K + D)) * z[2] / den;
            }
            if (k2 >= b2) break;
            int K = k1 + k2;
            Num den = (p[3] + Num(k2 + d[1])) * Num(k2 + 1);
            if (den == zero) pole(1, k2 + d[1]);
            t2 *= (a + Num(K + D)) * (b + Num(K + D)) * z[1] / den;
        }
        if (k1 >= b1) break;
        Num den = (p[2] + Num(k1 + d[0])) * Num(k1 + 1);
        if (den == zero) pole(0, k1 + d[0]);
        t1 *= (a + Num(k1 + D)) * (b + Num(k1 + D)) * z[0] / den;
    }
}

template <typename Num>
Num series_value(const std::array<Num, 5>& p, const std::array<Num, 3>& z, int order,
                 Truncation tr, const std::array<int, 3>& d, DerivMode mode) {
    Num sum(0);
    if (mode == DerivMode::theta) {
        fc_scan<Num>(p, z, order, tr, {0, 0, 0}, [&](int k1, int k2, int k3, const Num& t) {
            long w = 1;
            for (int n = 0; n < d[0]; ++n) w *= k1;
            for (int n = 0; n < d[1]; ++n) w *= k2;
            for (int n = 0; n < d[2]; ++n) w *= k3;
            if (w) sum += t * Num(w);
        });
    } else {
        fc_scan<Num>(p, z, order, tr, d, [&](int, int, int, const Num& t) { sum += t; });
    }
    return sum;
}

}  // namespace detail

// Exact truncated sum; deriv is ignored here (use fc_series_deriv).
BigRational fc_series(const SeriesRequest& req);

// Derivative per req.mode and req.deriv; equals fc_series for deriv (0,0,0).
BigRational fc_series_deriv(const SeriesRequest& req);

// Double-precision variants of the same sums.
double fc_series_f(const SeriesRequest& req);
double fc_series_deriv_f(const SeriesRequest& req);

// All eight sums sum_m w_s(m) c_m z^m with weights (1, m1, m2, m3, m1m2,
// m1m3, m2m3, m1m2m3), in basis-slot order: the theta-derivative values a
// ReductionResult is applied to.
std::array<BigRational, 8> theta_basis_sums(const std::array<BigRational, 5>& params,
                                            const std::array<BigRational, 3>& z, int order,
                                            Truncation tr = Truncation::per_variable);

struct ConvergenceStatus {
    bool convergent;       // sqrt(z1)+sqrt(z2)+sqrt(z3) < 1, where defined
    bool outside_domain;   // some z_i < 0: no criterion applies, reported true
};

ConvergenceStatus convergence_check(const std::array<double, 3>& z);

struct PointReport {
    std::array<BigRational, 3> z;
    BigRational lhs, rhs, abs_dev, rel_dev;
    bool used_absolute = false;  // |lhs| below 1e-12, absolute fallback
    bool pass = false;
    std::string error;  // nonempty when evaluation failed at this point
};

struct VerificationReport {
    std::vector<PointReport> points;
    BigRational tolerance;
    bool pass = false;
};

// Numerically checks F(oldParams) = sum_s Q[s] theta^s F(newParams) at each
// sample point: both sides as exact truncated sums of the same order. The
// canonical parameter symbols are bound to oldParams' values; `binding`
// supplies any further free symbols (e.g. eps).
VerificationReport verify_reduction(const ReductionResult& result,
                                    const ParameterVector& oldParams,
                                    const std::vector<std::array<BigRational, 3>>& points,
                                    int order, const BigRational& tol,
                                    const std::map<int, BigRational>& binding = {},
                                    Truncation tr = Truncation::per_variable);

}  // namespace fc
