#include <doctest.h>

#include <map>
#include <stdexcept>
#include <vector>

#include "fc/polynomial.hpp"
#include "fc/symbols.hpp"
#include "oracles.hpp"

using fc::BigRational;
using fc::Polynomial;

namespace {

Polynomial rand_poly(oracle::Rng& rng, const std::vector<int>& vars, int maxdeg, int nterms) {
    Polynomial p;
    for (int t = 0; t < nterms; ++t) {
        fc::Mono m;
        for (int v : vars) m.set_exponent(v, static_cast<unsigned>(rng.range(0, maxdeg)));
        p.add_term(m, rng.rational(9, 4));
    }
    return p;
}

const std::vector<int> zvars{fc::SYM_Z1, fc::SYM_Z2, fc::SYM_Z3};

}  // namespace

TEST_CASE("ring axioms on random polynomials") {
    oracle::Rng rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        Polynomial p = rand_poly(rng, zvars, 3, 4);
        Polynomial q = rand_poly(rng, zvars, 3, 4);
        Polynomial r = rand_poly(rng, zvars, 3, 4);
        CHECK(p + q == q + p);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p - q) + q == p);
        CHECK(p - p == Polynomial());
        CHECK(p * Polynomial::constant(BigRational(1)) == p);
        CHECK((p * Polynomial()).is_zero());
    }
}

TEST_CASE("mul_sub is the fused p*q - r*s") {
    oracle::Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial p = rand_poly(rng, zvars, 3, 5);
        Polynomial q = rand_poly(rng, zvars, 3, 5);
        Polynomial r = rand_poly(rng, zvars, 3, 5);
        Polynomial s = rand_poly(rng, zvars, 3, 5);
        CHECK(mul_sub(p, q, r, s) == p * q - r * s);
    }
    CHECK(mul_sub(Polynomial(), Polynomial(), Polynomial(), Polynomial()).is_zero());
}

TEST_CASE("exact division") {
    oracle::Rng rng(91);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial p = rand_poly(rng, zvars, 2, 3);
        Polynomial q = rand_poly(rng, zvars, 2, 3);
        if (q.is_zero()) continue;
        auto back = fc::try_exact_divide(p * q, q);
        REQUIRE(back.has_value());
        CHECK(*back == p);
    }
    Polynomial z1 = Polynomial::variable(fc::SYM_Z1);
    Polynomial z2 = Polynomial::variable(fc::SYM_Z2);
    Polynomial one = Polynomial::constant(BigRational(1));
    CHECK(!fc::try_exact_divide(z1 + one, z1).has_value());
    CHECK(!fc::try_exact_divide(z1 * z1 + z2, z1 + one).has_value());
    // scalar divisors always work
    auto half = fc::try_exact_divide(z1 + z2, Polynomial::constant(BigRational(2)));
    REQUIRE(half.has_value());
    CHECK(*half == (z1 + z2).scaled(BigRational(1, 2)));
}

TEST_CASE("gcd pulls out a planted common factor") {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 6; ++trial) {
        Polynomial p = rand_poly(rng, zvars, 2, 3);
        Polynomial q = rand_poly(rng, zvars, 2, 3);
        Polynomial r = rand_poly(rng, zvars, 2, 3);
        if (p.is_zero() || q.is_zero() || r.is_zero()) continue;
        Polynomial g = fc::poly_gcd(p * r, q * r);
        // g divides both products, and the planted factor divides g
        CHECK(fc::try_exact_divide(p * r, g).has_value());
        CHECK(fc::try_exact_divide(q * r, g).has_value());
        CHECK(fc::try_exact_divide(g, r).has_value());
    }
}

TEST_CASE("signed content") {
    Polynomial z1 = Polynomial::variable(fc::SYM_Z1);
    Polynomial p = (z1 * z1).scaled(BigRational(-2, 3)) - z1.scaled(BigRational(4));
    // leading coefficient is negative, so the content carries the sign
    CHECK(p.signed_content() == BigRational(-2, 3));
    Polynomial prim = p.scaled(p.signed_content().reciprocal());
    CHECK(prim == z1 * z1 + z1.scaled(BigRational(6)));
    CHECK(prim.signed_content() == BigRational(1));
}

TEST_CASE("derivative satisfies the product rule") {
    oracle::Rng rng(77);
    for (int trial = 0; trial < 8; ++trial) {
        Polynomial p = rand_poly(rng, zvars, 3, 4);
        Polynomial q = rand_poly(rng, zvars, 3, 4);
        for (int v : zvars)
            CHECK((p * q).derivative(v) == p.derivative(v) * q + p * q.derivative(v));
    }
    CHECK(Polynomial::constant(BigRational(5)).derivative(fc::SYM_Z1).is_zero());
    Polynomial z1 = Polynomial::variable(fc::SYM_Z1);
    CHECK(z1.pow(4).derivative(fc::SYM_Z1) == z1.pow(3).scaled(BigRational(4)));
}

TEST_CASE("partial evaluation composes") {
    oracle::Rng rng(31);
    Polynomial p = rand_poly(rng, zvars, 3, 6);
    std::map<int, BigRational> b1{{fc::SYM_Z1, BigRational(1, 3)}};
    std::map<int, BigRational> b2{{fc::SYM_Z2, BigRational(-2, 5)}, {fc::SYM_Z3, BigRational(4)}};
    std::map<int, BigRational> all = b1;
    all.insert(b2.begin(), b2.end());
    CHECK(p.eval_partial(b1).eval_partial(b2) == p.eval_partial(all));
    Polynomial v = p.eval_partial(all);
    CHECK(v.is_constant());
    // against a hand evaluation through the term list
    BigRational direct;
    for (const auto& [m, c] : p.terms()) {
        BigRational t = c;
        t *= oracle::rpow(BigRational(1, 3), static_cast<int>(m.exponent(fc::SYM_Z1)));
        t *= oracle::rpow(BigRational(-2, 5), static_cast<int>(m.exponent(fc::SYM_Z2)));
        t *= oracle::rpow(BigRational(4), static_cast<int>(m.exponent(fc::SYM_Z3)));
        direct += t;
    }
    CHECK(v.constant_value() == direct);
}

TEST_CASE("degrees and leading data") {
    Polynomial z1 = Polynomial::variable(fc::SYM_Z1);
    Polynomial z2 = Polynomial::variable(fc::SYM_Z2);
    Polynomial p = z1 * z1 * z2.scaled(BigRational(3)) - z2.pow(2) + Polynomial::constant(BigRational(7));
    CHECK(p.total_degree() == 3);
    CHECK(p.degree_in(fc::SYM_Z1) == 2);
    CHECK(p.degree_in(fc::SYM_Z2) == 2);
    CHECK(p.degree_in(fc::SYM_Z3) == 0);
    CHECK(p.term_count() == 3);
    CHECK(p.max_var() == fc::SYM_Z2);
    CHECK(p.lead_coeff() == BigRational(3));
    CHECK(p.uses_var(fc::SYM_Z2));
    CHECK(!p.uses_var(fc::SYM_A));
}

TEST_CASE("packed monomial limits are enforced") {
    CHECK_THROWS_AS(Polynomial::variable(fc::Mono::MAX_SYMBOLS), std::out_of_range);
    CHECK_THROWS_AS(Polynomial::variable(-1), std::out_of_range);
    Polynomial z1 = Polynomial::variable(fc::SYM_Z1);
    CHECK(z1.pow(fc::Mono::MAX_EXPONENT).degree_in(fc::SYM_Z1) == fc::Mono::MAX_EXPONENT);
    CHECK_THROWS_AS(z1.pow(fc::Mono::MAX_EXPONENT + 1), std::overflow_error);
}
