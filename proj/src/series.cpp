#include "fc/series.hpp"

#include <cmath>

#include "fc/errors.hpp"

namespace fc {

namespace {

template <typename Num>
std::array<Num, 5> cast_params(const SeriesRequest& req) {
    std::array<Num, 5> p;
    for (std::size_t i = 0; i < 5; ++i) p[i] = detail::num_from<Num>(req.params[i]);
    return p;
}

template <typename Num>
std::array<Num, 3> cast_z(const SeriesRequest& req) {
    std::array<Num, 3> z;
    for (std::size_t i = 0; i < 3; ++i) z[i] = detail::num_from<Num>(req.z[i]);
    return z;
}

}  // namespace

BigRational fc_series(const SeriesRequest& req) {
    return detail::series_value<BigRational>(req.params, req.z, req.order, req.truncation,
                                             {0, 0, 0}, DerivMode::partial);
}

BigRational fc_series_deriv(const SeriesRequest& req) {
    return detail::series_value<BigRational>(req.params, req.z, req.order, req.truncation,
                                             req.deriv, req.mode);
}

double fc_series_f(const SeriesRequest& req) {
    return detail::series_value<double>(cast_params<double>(req), cast_z<double>(req), req.order,
                                        req.truncation, {0, 0, 0}, DerivMode::partial);
}

double fc_series_deriv_f(const SeriesRequest& req) {
    return detail::series_value<double>(cast_params<double>(req), cast_z<double>(req), req.order,
                                        req.truncation, req.deriv, req.mode);
}

std::array<BigRational, 8> theta_basis_sums(const std::array<BigRational, 5>& params,
                                            const std::array<BigRational, 3>& z, int order,
                                            Truncation tr) {
    std::array<BigRational, 8> sums{};
    detail::fc_scan<BigRational>(
        params, z, order, tr, {0, 0, 0}, [&](int k1, int k2, int k3, const BigRational& t) {
            sums[0] += t;
            if (k1) sums[1] += t * BigRational(k1);
            if (k2) sums[2] += t * BigRational(k2);
            if (k3) sums[3] += t * BigRational(k3);
            if (k1 && k2) sums[4] += t * BigRational(static_cast<long>(k1) * k2);
            if (k1 && k3) sums[5] += t * BigRational(static_cast<long>(k1) * k3);
            if (k2 && k3) sums[6] += t * BigRational(static_cast<long>(k2) * k3);
            if (k1 && k2 && k3) sums[7] += t * BigRational(static_cast<long>(k1) * k2 * k3);
        });
    return sums;
}

ConvergenceStatus convergence_check(const std::array<double, 3>& z) {
    ConvergenceStatus st{false, false};
    double s = 0;
    for (double v : z) {
        if (v < 0) {
            st.outside_domain = true;
            continue;
        }
        s += std::sqrt(v);
    }
    st.convergent = st.outside_domain || s < 1.0;
    return st;
}

VerificationReport verify_reduction(const ReductionResult& result,
                                    const ParameterVector& oldParams,
                                    const std::vector<std::array<BigRational, 3>>& points,
                                    int order, const BigRational& tol,
                                    const std::map<int, BigRational>& binding, Truncation tr) {
    VerificationReport report;
    report.tolerance = tol;
    report.pass = true;
    const BigRational tiny(1, 1000000000000L);  // 1e-12 absolute-fallback threshold

    std::map<int, BigRational> paramBinding = binding;
    std::array<BigRational, 5> oldVals;
    std::array<BigRational, 5> newVals;
    bool paramsOk = true;
    std::string paramsError;
    try {
        for (std::size_t i = 0; i < 5; ++i) oldVals[i] = evaluate(oldParams.v[i], binding);
        for (int i = 0; i < 5; ++i) paramBinding[SYM_A + i] = oldVals[static_cast<std::size_t>(i)];
        for (std::size_t i = 0; i < 5; ++i)
            newVals[i] = evaluate(result.newParams.v[i], paramBinding);
    } catch (const std::exception& e) {
        paramsOk = false;
        paramsError = e.what();
    }

    for (const auto& z : points) {
        PointReport pr;
        pr.z = z;
        if (!paramsOk) {
            pr.error = paramsError;
            report.points.push_back(std::move(pr));
            report.pass = false;
            continue;
        }
        try {
            SeriesRequest lhsReq{oldVals, z, order, {0, 0, 0}, tr, DerivMode::partial};
            pr.lhs = fc_series(lhsReq);

            std::array<BigRational, 8> sums = theta_basis_sums(newVals, z, order, tr);
            std::map<int, BigRational> full = paramBinding;
            for (int i = 0; i < 3; ++i) full[SYM_Z1 + i] = z[static_cast<std::size_t>(i)];
            BigRational rhs;
            for (std::size_t s = 0; s < 8; ++s) {
                if (result.Q.c[s].is_zero()) continue;
                rhs += evaluate(result.Q.c[s], full) * sums[s];
            }
            pr.rhs = rhs;
            pr.abs_dev = (pr.lhs - pr.rhs).abs();
            if (pr.lhs.abs() < tiny) {
                pr.used_absolute = true;
                pr.rel_dev = pr.abs_dev;
            } else {
                pr.rel_dev = pr.abs_dev / pr.lhs.abs();
            }
            pr.pass = pr.rel_dev <= tol;
        } catch (const std::exception& e) {
            pr.error = e.what();
            pr.pass = false;
        }
        if (!pr.pass) report.pass = false;
        report.points.push_back(std::move(pr));
    }
    return report;
}

}  // namespace fc
