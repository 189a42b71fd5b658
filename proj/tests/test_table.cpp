#include <doctest.h>

#include <array>
#include <map>

#include "fc/errors.hpp"
#include "fc/expr.hpp"
#include "fc/reduction.hpp"
#include "fc/series.hpp"
#include "fc/symbols.hpp"

using fc::BigRational;
using fc::NormalOperator;
using fc::ParameterVector;
using fc::RationalFunction;
using fc::ReductionTable;
using fc::ThetaMonomial;
using fc::ThetaOperator;

namespace {

const ReductionTable& sym_table() {
    static ReductionTable t(fc::build_canonical_system(ParameterVector::symbolic()));
    return t;
}

ParameterVector rational_params() {
    return ParameterVector({RationalFunction(BigRational(2, 5)), RationalFunction(BigRational(3, 7)),
                            RationalFunction(BigRational(5, 11)), RationalFunction(BigRational(4, 9)),
                            RationalFunction(BigRational(6, 13))});
}

}  // namespace

TEST_CASE("the closure holds exactly the twelve non-square-free monomials") {
    const ReductionTable& T = sym_table();
    const std::array<ThetaMonomial, 12> expected{{{2, 0, 0},
                                                  {0, 2, 0},
                                                  {0, 0, 2},
                                                  {2, 1, 0},
                                                  {2, 0, 1},
                                                  {1, 2, 0},
                                                  {0, 2, 1},
                                                  {1, 0, 2},
                                                  {0, 1, 2},
                                                  {2, 1, 1},
                                                  {1, 2, 1},
                                                  {1, 1, 2}}};
    CHECK(T.entries().size() == 12);
    for (const auto& m : expected) CHECK(T.contains(m));
    CHECK(!T.contains({1, 1, 1}));
    CHECK(!T.contains({3, 0, 0}));
    CHECK_THROWS_AS(T.at({3, 0, 0}), fc::UnreducibleMonomial);
    CHECK(T.params() == ParameterVector::symbolic());
}

TEST_CASE("squared entries are the canonical right sides") {
    const ReductionTable& T = sym_table();
    fc::CanonicalSystem sys = build_canonical_system(ParameterVector::symbolic());
    CHECK(T.at({2, 0, 0}) == sys.L[0]);
    CHECK(T.at({0, 2, 0}) == sys.L[1]);
    CHECK(T.at({0, 0, 2}) == sys.L[2]);
}

TEST_CASE("different routes to one monomial give one normal form") {
    const ReductionTable& T = sym_table();
    // th1^2 th2 th3 via th3 . (th1^2 th2) and via th2 . (th1^2 th3)
    NormalOperator viaTh3 = apply_theta_normal(2, T.at({2, 1, 0}), T);
    NormalOperator viaTh2 = apply_theta_normal(1, T.at({2, 0, 1}), T);
    CHECK(viaTh3 == viaTh2);
    CHECK(viaTh3 == T.at({2, 1, 1}));

    // peeling one theta off th1^3 equals applying th1 to the th1^2 entry
    ThetaOperator cube;
    cube.add({3, 0, 0}, RationalFunction(1));
    CHECK(normal_reduce(cube, T) == apply_theta_normal(0, T.at({2, 0, 0}), T));
}

TEST_CASE("normal_reduce flattens exponents beyond the closure") {
    const ReductionTable& T = sym_table();
    ThetaOperator big;
    big.add({3, 2, 0}, RationalFunction(1));

    NormalOperator steps = NormalOperator::identity();
    for (int n = 0; n < 2; ++n) steps = apply_theta_normal(1, steps, T);
    for (int n = 0; n < 3; ++n) steps = apply_theta_normal(0, steps, T);
    CHECK(normal_reduce(big, T) == steps);

    // square-free input needs no table at all: it is already in the basis
    ThetaOperator flat;
    flat.add({1, 1, 1}, fc::parse_expression("a/(1-z1)"));
    NormalOperator direct = normal_reduce(flat, T);
    CHECK(direct.c[7] == fc::parse_expression("a/(1-z1)"));
    CHECK(direct.c[0].is_zero());
}

TEST_CASE("a mixed entry matches the actual series numerically") {
    ParameterVector pv = rational_params();
    ReductionTable T(build_canonical_system(pv));

    std::array<BigRational, 5> pnum;
    for (std::size_t i = 0; i < 5; ++i) pnum[i] = pv.v[i].constant_value();
    std::array<BigRational, 3> z{BigRational(1, 50), BigRational(1, 64), BigRational(1, 81)};
    const int order = 30;

    std::array<BigRational, 8> sums = fc::theta_basis_sums(pnum, z, order);
    std::map<int, BigRational> binding;
    for (int i = 0; i < 5; ++i) binding[fc::SYM_A + i] = pnum[static_cast<std::size_t>(i)];
    for (int i = 0; i < 3; ++i) binding[fc::SYM_Z1 + i] = z[static_cast<std::size_t>(i)];

    fc::SeriesRequest req;
    req.params = pnum;
    req.z = z;
    req.order = order;
    req.deriv = {2, 1, 0};  // th1^2 th2 weights m1^2 m2
    req.truncation = fc::Truncation::per_variable;
    req.mode = fc::DerivMode::theta;
    BigRational lhs = fc_series_deriv(req);

    BigRational rhs;
    const NormalOperator& entry = T.at({2, 1, 0});
    for (std::size_t s = 0; s < 8; ++s) {
        if (entry.c[s].is_zero()) continue;
        rhs += evaluate(entry.c[s], binding) * sums[s];
    }
    BigRational rel = (lhs - rhs).abs() / lhs.abs();
    CHECK(rel < BigRational(1, 10000000000L));
}

TEST_CASE("prebuilt entry maps behave like freshly built tables") {
    const ReductionTable& T = sym_table();
    ReductionTable copy(ParameterVector::symbolic(), T.entries());
    CHECK(copy.params() == T.params());
    CHECK(copy.entries().size() == 12);
    CHECK(copy.at({2, 1, 1}) == T.at({2, 1, 1}));
    NormalOperator viaCopy = apply_theta_normal(0, copy.at({0, 2, 0}), copy);
    NormalOperator viaOrig = apply_theta_normal(0, T.at({0, 2, 0}), T);
    CHECK(viaCopy == viaOrig);
}
