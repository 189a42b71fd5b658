#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fc/engine.hpp"
#include "fc/errors.hpp"
#include "fc/expr.hpp"
#include "fc/symbols.hpp"

using fc::BigRational;
using fc::Engine;
using fc::NormalOperator;
using fc::parse_expression;
using fc::ParameterVector;
using fc::RationalFunction;
using fc::ShiftVector;
using fc::StepDirection;

namespace {

ParameterVector nums(long an, long ad, long bn, long bd, long c1n, long c1d, long c2n, long c2d,
                     long c3n, long c3d) {
    return ParameterVector({RationalFunction(BigRational(an, ad)), RationalFunction(BigRational(bn, bd)),
                            RationalFunction(BigRational(c1n, c1d)), RationalFunction(BigRational(c2n, c2d)),
                            RationalFunction(BigRational(c3n, c3d))});
}

ParameterVector cheap_params() { return nums(2, 5, 3, 7, 5, 11, 4, 9, 6, 13); }

}  // namespace

TEST_CASE("closed-form step operators") {
    ParameterVector sym = ParameterVector::symbolic();

    NormalOperator upA = direct_operator(0, StepDirection::up, sym);
    CHECK(upA.c[0] == RationalFunction(1));
    for (std::size_t s = 1; s <= 3; ++s) CHECK(upA.c[s] == parse_expression("1/a"));
    for (std::size_t s = 4; s < 8; ++s) CHECK(upA.c[s].is_zero());

    NormalOperator upB = direct_operator(1, StepDirection::up, sym);
    for (std::size_t s = 1; s <= 3; ++s) CHECK(upB.c[s] == parse_expression("1/b"));

    NormalOperator downC1 = direct_operator(2, StepDirection::down, sym);
    CHECK(downC1.c[0] == RationalFunction(1));
    CHECK(downC1.c[1] == parse_expression("1/(c1-1)"));
    for (std::size_t s : {2u, 3u, 4u, 5u, 6u, 7u}) CHECK(downC1.c[s].is_zero());

    NormalOperator downC3 = direct_operator(4, StepDirection::down, sym);
    CHECK(downC3.c[3] == parse_expression("1/(c3-1)"));
    CHECK(downC3.c[1].is_zero());

    CHECK_THROWS_AS(direct_operator(0, StepDirection::down, sym), std::invalid_argument);
    CHECK_THROWS_AS(direct_operator(2, StepDirection::up, sym), std::invalid_argument);
    CHECK_THROWS_AS(direct_operator(5, StepDirection::up, sym), std::invalid_argument);
}

TEST_CASE("closed forms reject exceptional parameters") {
    ParameterVector zeroA = nums(0, 1, 1, 3, 2, 3, 3, 5, 4, 7);
    try {
        direct_operator(0, StepDirection::up, zeroA);
        FAIL("expected ExceptionalParameter");
    } catch (const fc::ExceptionalParameter& e) {
        REQUIRE(e.factors.size() == 1);
        CHECK(e.factors[0] == "a");
    }
    ParameterVector oneC1 = nums(1, 3, 1, 5, 1, 1, 3, 5, 4, 7);
    try {
        direct_operator(2, StepDirection::down, oneC1);
        FAIL("expected ExceptionalParameter");
    } catch (const fc::ExceptionalParameter& e) {
        REQUIRE(e.factors.size() == 1);
        CHECK(e.factors[0] == "c1-1");
    }
}

TEST_CASE("solved inverses undo the closed forms") {
    Engine e;
    ParameterVector P = cheap_params();
    auto table = e.table_for(P);
    for (int which = 0; which < 5; ++which) {
        StepDirection dir = which <= 1 ? StepDirection::up : StepDirection::down;
        NormalOperator V = e.inverse_operator(which, P);
        NormalOperator D = direct_operator(which, dir, P);
        CHECK(compose_normal(V, D, *table) == NormalOperator::identity());
    }
    // the theta-algebra route computes the same composition
    NormalOperator V = e.inverse_operator(0, P);
    NormalOperator D = direct_operator(0, StepDirection::up, P);
    NormalOperator viaOps = normal_reduce(
        op_compose(fc::ThetaOperator::from_normal(V), fc::ThetaOperator::from_normal(D)), *table);
    CHECK(viaOps == NormalOperator::identity());
}

TEST_CASE("inverse solve names the vanishing discriminant factor") {
    Engine e;
    // 1 + a - c1 = 0
    ParameterVector P = nums(1, 2, 1, 3, 3, 2, 1, 4, 1, 5);
    try {
        e.inverse_operator(0, P);
        FAIL("expected ExceptionalParameter");
    } catch (const fc::ExceptionalParameter& e2) {
        REQUIRE(!e2.factors.empty());
        CHECK(e2.factors[0] == "a-c1+1");
    }
}

TEST_CASE("single-unit round trips compose to the identity") {
    Engine e;
    ParameterVector P = cheap_params();
    auto table = e.table_for(P);

    fc::ReductionResult up = e.index_change(ShiftVector{1, 0, 0, 0, 0}, P);
    CHECK(up.newParams == P.shifted(0, 1));
    fc::ReductionResult down = e.index_change(ShiftVector{-1, 0, 0, 0, 0}, up.newParams);
    CHECK(down.newParams == P);
    CHECK(compose_normal(up.Q, down.Q, *table) == NormalOperator::identity());

    fc::ReductionResult cUp = e.index_change(ShiftVector{0, 0, 1, 0, 0}, P);
    fc::ReductionResult cDown = e.index_change(ShiftVector{0, 0, -1, 0, 0}, cUp.newParams);
    CHECK(cDown.newParams == P);
    CHECK(compose_normal(cUp.Q, cDown.Q, *table) == NormalOperator::identity());
}

TEST_CASE("step order does not change the result") {
    Engine e;
    ParameterVector P = cheap_params();

    // engine order: a first, then c1
    fc::ReductionResult r = e.index_change(ShiftVector{-1, 0, 1, 0, 0}, P);
    ParameterVector dest = P.shifted(0, -1).shifted(2, 1);
    CHECK(r.newParams == dest);

    // manual reversed order: c1 first, then a
    NormalOperator S1 = direct_operator(2, StepDirection::down, P.shifted(2, 1));
    NormalOperator S2 = direct_operator(0, StepDirection::up, dest);
    NormalOperator manual = compose_normal(S1, S2, *e.table_for(dest));
    CHECK(r.Q == manual);
}

TEST_CASE("zero shift is the identity reduction") {
    Engine e;
    ParameterVector P = cheap_params();
    fc::ReductionResult r = e.index_change(ShiftVector{0, 0, 0, 0, 0}, P);
    CHECK(r.Q == NormalOperator::identity());
    CHECK(r.newParams == P);
}

TEST_CASE("chain failures carry the failing step") {
    Engine e;
    ParameterVector oneC1 = nums(1, 3, 1, 5, 1, 1, 3, 5, 4, 7);
    try {
        e.index_change(ShiftVector{0, 0, -1, 0, 0}, oneC1);
        FAIL("expected ExceptionalParameter");
    } catch (const fc::ExceptionalParameter& err) {
        CHECK(err.step == 1);
        REQUIRE(!err.factors.empty());
        CHECK(err.factors[0] == "c1-1");
    }
    // second step of an a-raising chain crosses 1 + a - c1 = 0
    ParameterVector P = nums(1, 2, 1, 3, 5, 2, 1, 4, 1, 5);
    try {
        e.index_change(ShiftVector{2, 0, 0, 0, 0}, P);
        FAIL("expected ExceptionalParameter");
    } catch (const fc::ExceptionalParameter& err) {
        CHECK(err.step == 2);
    }
}

TEST_CASE("exceptional pre-check walks the chain") {
    Engine e;
    ParameterVector P = nums(1, 2, 1, 3, 5, 2, 1, 4, 1, 5);  // 1 + a - c1 = 0 after one a step
    std::vector<std::string> flagged = e.check_exceptional(ShiftVector{2, 0, 0, 0, 0}, P);
    REQUIRE(!flagged.empty());
    CHECK(flagged[0] == "a-c1+1");
    CHECK(e.check_exceptional(ShiftVector{2, -1, 1, 2, -2}, cheap_params()).empty());
    CHECK(e.check_exceptional(ShiftVector{0, 0, 0, 0, 0}, P).empty());
}

TEST_CASE("discriminant factor lists and products") {
    ParameterVector sym = ParameterVector::symbolic();
    CHECK(fc::ddiscr_factors(0, sym).size() == 7);
    CHECK(fc::ddiscr_factors(1, sym).size() == 7);
    CHECK(fc::ddiscr_factors(2, sym).size() == 8);
    CHECK(fc::ddiscr_product(0).total_degree() == 13);  // 12 ordered-pair factors + the triple one
    CHECK(fc::ddiscr_product(2).total_degree() == 12);
    CHECK(fc::dcont_polynomial() == fc::dcont_bracket() * fc::d0_polynomial());
    CHECK(fc::dcont_polynomial().total_degree() == 4);
    // the a-side product only involves a and the c's
    CHECK(!fc::ddiscr_product(0).uses_var(fc::SYM_B));
    CHECK(fc::ddiscr_product(2).uses_var(fc::SYM_B));
}

TEST_CASE("tables persist through FC_CACHE_DIR and reload from disk") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "fc_engine_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    setenv("FC_CACHE_DIR", dir.c_str(), 1);

    ParameterVector P = nums(3, 8, 5, 7, 7, 12, 2, 7, 9, 14);
    RationalFunction truth;
    fs::path file;
    {
        Engine e1;
        truth = e1.table_for(P)->at({0, 0, 2}).c[2];
        std::vector<fs::path> found;
        for (const auto& ent : fs::directory_iterator(dir)) found.push_back(ent.path());
        REQUIRE(found.size() == 1);
        file = found[0];
        CHECK(file.extension() == ".tbl");
    }

    // plant a marker coefficient in the stored entry for th3^2; a fresh engine
    // must come back with the marker, proving the table really loads from disk
    {
        std::ifstream in(file);
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        REQUIRE(lines.size() > 10);
        CHECK(lines[2] == "0 0 2");  // first map entry: th3^2
        lines[5] = "7";              // its coefficient on the th2 slot
        std::ofstream out(file, std::ios::trunc);
        for (const auto& l : lines) out << l << '\n';
    }
    {
        Engine e2;
        RationalFunction marked = e2.table_for(P)->at({0, 0, 2}).c[2];
        CHECK(marked == RationalFunction(7));
        CHECK(marked != truth);
    }

    // a damaged file is treated as a miss and rebuilt
    {
        std::ofstream out(file, std::ios::trunc);
        out << "garbage\n";
    }
    {
        Engine e3;
        CHECK(e3.table_for(P)->at({0, 0, 2}).c[2] == truth);
    }

    unsetenv("FC_CACHE_DIR");
    fs::remove_all(dir);
}
