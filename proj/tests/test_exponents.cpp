#include <doctest.h>

#include <random>

#include "critcouple/exponents.hpp"
#include "critcouple/sampling.hpp"

using namespace critcouple;

TEST_SUITE("exponents") {

TEST_CASE("critical exponent values") {
    CHECK(critical_exponent(4, 0.5, 2.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(critical_exponent(1, 0.5, 1.5) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(critical_exponent(2, 0.5, 1.5) == doctest::Approx(2.4).epsilon(1e-15));
    CHECK_THROWS_AS(critical_exponent(1, 0.9, 2.0), DomainError);
    CHECK_THROWS_AS(critical_exponent(1, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS(critical_exponent(1, 0.5, 1.0), DomainError);
}

TEST_CASE("validation accepts consistent tuples and lists every violation") {
    const ParamSet P = validate_params(4, 0.5, 2, 4.0 / 3.0, 4.0 / 3.0);
    CHECK(P.p_star() == doctest::Approx(8.0 / 3.0));

    try {
        validate_params(4, 0.5, 2, 2, 2);
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        CHECK(e.violations().size() == 1);
    }
    try {
        validate_params(1, 0.9, 2, 1.5, 1.5);
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        CHECK(!e.violations().empty());
    }
    try {
        validate_params(1, 1.5, 0.5, 0.5, 0.5);
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        CHECK(e.violations().size() >= 3);
    }
    CHECK_THROWS_AS(validate_params(1.5, 0.5, 1.5, 3, 3), ValidationError);
}

TEST_CASE("from_alpha derives beta and swapped exchanges the pair") {
    const ParamSet P = ParamSet::from_alpha(1, 0.25, 1.8, 1.5);
    CHECK(P.alpha() + P.beta() == doctest::Approx(P.p_star()).epsilon(1e-15));
    const ParamSet Q = P.swapped();
    CHECK(Q.alpha() == P.beta());
    CHECK(Q.beta() == P.alpha());
    CHECK_THROWS_AS(ParamSet::from_alpha(1, 0.25, 1.8, 3.0), ValidationError);
}

TEST_CASE("regime examples") {
    CHECK(regime_classify(validate_params(4, 0.5, 2, 4.0 / 3.0, 4.0 / 3.0)).tau_min_case ==
          TauMinCase::BetaBelowP);
    // N = 2sp with alpha = beta = p
    CHECK(regime_classify(ParamSet::from_alpha(2, 0.5, 2, 2)).tau_min_case == TauMinCase::Degenerate);
    CHECK(regime_classify(ParamSet::from_alpha(1, 0.25, 1.8, 1.6)).window == EnergyWindow::WindowII);
    CHECK(regime_classify(ParamSet::from_alpha(1, 0.5, 1.5, 3)).window == EnergyWindow::WindowI);
    CHECK(regime_classify(ParamSet::from_alpha(1, 0.5, 1.5, 1.2)).window == EnergyWindow::Neither);
    // p exactly N/(2s) is a window boundary
    CHECK(regime_classify(ParamSet::from_alpha(2, 0.5, 2, 1.5)).window == EnergyWindow::Neither);
}

TEST_CASE("property: exponent identities and partition over random tuples") {
    std::mt19937_64 rng(7);
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < 700; ++i) {
        const ParamSet P = sampling::sample_any(i, rng);
        const double N = P.N(), s = P.s(), p = P.p(), ps = P.p_star();
        REQUIRE(p < ps);
        CHECK(std::abs(1.0 / p - 1.0 / ps - s / N) < 1e-14);
        CHECK(std::abs((s / N) * p * ps - (ps - p)) < 1e-12 * ps);
        CHECK(std::abs(P.alpha() + P.beta() - ps) < 1e-12);

        const Regime r = regime_classify(P);
        const bool i_ = P.beta() < p && !exponent_equal(P.beta(), p);
        const bool ii = exponent_equal(P.beta(), p) && P.alpha() < p && !exponent_equal(P.alpha(), p);
        const bool iii = P.beta() > p && !exponent_equal(P.beta(), p) && P.alpha() < p && !exponent_equal(P.alpha(), p);
        CHECK(int(i_) + int(ii) + int(iii) <= 1);
        const TauMinCase want = i_ ? TauMinCase::BetaBelowP
                                 : ii ? TauMinCase::BetaEqualsPAlphaBelow
                                 : iii ? TauMinCase::BetaAbovePAlphaBelow
                                       : TauMinCase::Degenerate;
        CHECK(r.tau_min_case == want);
        ++counts[static_cast<int>(r.tau_min_case)];
    }
    for (int c : counts) CHECK(c > 0);
}

}  // TEST_SUITE
