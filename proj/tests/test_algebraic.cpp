#include <doctest.h>

#include <cmath>
#include <random>

#include "critcouple/algebraic.hpp"
#include "critcouple/sampling.hpp"

using namespace critcouple;
using namespace critcouple::algebraic;

namespace {

// Straight transcription of the first equation, used as the reference.
double F1_ref(double k, double l, const ParamSet& P, double g) {
    const double p = P.p(), ps = P.p_star();
    return std::pow(k, (ps - p) / p) + P.alpha() * g / ps * std::pow(k, (P.alpha() - p) / p) * std::pow(l, P.beta() / p) - 1.0;
}

ParamSet window_i_tuple() { return ParamSet::from_alpha(1, 0.5, 1.5, 3.0); }
ParamSet window_ii_tuple() { return ParamSet::from_alpha(1, 0.25, 1.8, 1.6); }

}  // namespace

TEST_SUITE("algebraic") {

TEST_CASE("F1 and F2 basic values") {
    const ParamSet P = window_ii_tuple();
    const GammaSystem sys(P, 0.7);
    CHECK(F1(1.0, 0.0, sys) == 0.0);
    CHECK(F2(0.0, 1.0, sys) == 0.0);
    CHECK(F1(1.0, 1.0, P, 0.0) == 0.0);
    CHECK(F2(1.0, 1.0, P, 0.0) == 0.0);
    for (double k : {0.1, 0.4, 0.9})
        for (double l : {0.0, 0.3, 1.2}) CHECK(F1(k, l, sys) == doctest::Approx(F1_ref(k, l, P, 0.7)).epsilon(1e-14));
    CHECK_THROWS_AS(F1(0.0, 0.5, sys), DomainError);
    CHECK_THROWS_AS(F1(0.5, -0.1, sys), DomainError);
    CHECK_THROWS_AS(GammaSystem(P, 0.0), DomainError);
}

TEST_CASE("swap symmetry is exact") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.01, 1.5);
    for (int i = 0; i < 20; ++i) {
        const ParamSet P = sampling::sample_window(i % 2 ? EnergyWindow::WindowI : EnergyWindow::WindowII, rng);
        const ParamSet Q = P.swapped();
        for (int j = 0; j < 20; ++j) {
            const double k = U(rng), l = U(rng), g = U(rng);
            CHECK(F1(k, l, P, g) == F2(l, k, Q, g));
        }
    }
    const ParamSet S = ParamSet::from_alpha(1, 0.25, 1.8, ParamSet::from_alpha(1, 0.25, 1.8, 1.6).p_star() / 2);
    const GammaSystem sys(S, 0.3);
    CHECK(F1(0.3, 0.6, sys) == F2(0.6, 0.3, sys));
    CHECK(ell_of_k(0.4, sys) == doctest::Approx(k_of_ell(0.4, sys)).epsilon(1e-15));
}

TEST_CASE("parametrised curves") {
    const GammaSystem sys(window_ii_tuple(), 1.3);
    CHECK(ell_of_k(1.0, sys) == 0.0);
    CHECK_THROWS_AS(ell_of_k(0.0, sys), DomainError);
    CHECK_THROWS_AS(ell_of_k(1.5, sys), DomainError);
    for (int i = 1; i <= 1000; ++i) {
        const double t = i / 1000.0;
        CHECK(std::abs(F1(t, ell_of_k(t, sys), sys)) < 1e-10);
        CHECK(std::abs(F2(k_of_ell(t, sys), t, sys)) < 1e-10);
    }
    for (double k : {0.05, 0.3, 0.7, 0.95}) {
        const double h = 1e-6 * k;
        const double fd = (ell_of_k(k + h, sys) - ell_of_k(k - h, sys)) / (2 * h);
        CHECK(ell_prime(k, sys) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("thresholds") {
    CHECK(gamma_upper_threshold(window_i_tuple()) == doctest::Approx(6.0).epsilon(1e-14));
    const ParamSet P = window_ii_tuple();
    const double lo = gamma_lower_threshold(P);
    CHECK(std::isfinite(lo));
    CHECK(lo > 0.0);
    CHECK(gamma_lower_threshold(P.swapped()) == doctest::Approx(lo).epsilon(1e-14));
    const ParamSet W = ParamSet::from_alpha(1, 0.5, 1.5, 2.0);
    CHECK(gamma_upper_threshold(W.swapped()) == doctest::Approx(gamma_upper_threshold(W)).epsilon(1e-14));
    const ParamSet E = ParamSet::from_alpha(1, 0.25, 1.8, P.p_star() / 2);
    CHECK(gamma_lower_threshold(E) ==
          doctest::Approx(E.p_star() * (E.p_star() - E.p()) / (E.p() * E.alpha())).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_upper_threshold(P), RegimeError);
    CHECK_THROWS_AS(gamma_lower_threshold(window_i_tuple()), RegimeError);
}

TEST_CASE("solve_all") {
    SUBCASE("small gamma in Window_i gives the single root near (1, 1)") {
        const auto sols = solve_all(GammaSystem(ParamSet::from_alpha(1, 0.5, 1.5, 2.5), 1e-6));
        REQUIRE(sols.size() == 1);
        CHECK(sols[0].k == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(sols[0].l == doctest::Approx(1.0).epsilon(1e-4));
    }
    SUBCASE("small gamma in Window_ii adds roots hugging the axes") {
        // With alpha, beta < p the coupling term of F1 blows up as k -> 0, so F1(k, 1) = 0
        // has a root at k ~ (alpha gamma / p*)^(p / (p - alpha)), next to F2(0, 1) = 0.
        const ParamSet P = window_ii_tuple();
        const double gamma = 1e-6;
        const auto sols = solve_all(GammaSystem(P, gamma));
        REQUIRE(sols.size() == 3);
        CHECK(sols[0].l == doctest::Approx(1.0));
        CHECK(std::log(sols[0].k) ==
              doctest::Approx(P.p() / (P.p() - P.alpha()) * std::log(P.alpha() * gamma / P.p_star())).epsilon(1e-6));
        CHECK(sols[1].k == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(sols[1].l == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(sols[2].k == doctest::Approx(1.0));
        CHECK(sols[0].is_k0);
        CHECK(sols[2].is_l1);
    }
    SUBCASE("symmetric exponents give a symmetric root") {
        const ParamSet P = ParamSet::from_alpha(1, 0.5, 1.5, 3.0);
        const auto sols = solve_all(GammaSystem(P, 2.0));
        bool symmetric = false;
        for (const auto& s : sols) symmetric = symmetric || std::abs(s.k - s.l) < 1e-9;
        CHECK(symmetric);
    }
    SUBCASE("flags and residuals") {
        const ParamSet P = window_ii_tuple();
        const auto sols = solve_all(GammaSystem(P, 2.0 * gamma_lower_threshold(P)));
        int k0 = 0, l1 = 0;
        double min_k = 1e9, min_l = 1e9;
        for (const auto& s : sols) {
            k0 += s.is_k0;
            l1 += s.is_l1;
            min_k = std::min(min_k, s.k);
            min_l = std::min(min_l, s.l);
            CHECK(std::abs(s.residual_F1) < 1e-10);
            CHECK(std::abs(s.residual_F2) < 1e-10);
        }
        CHECK(k0 == 1);
        CHECK(l1 == 1);
        CHECK(k0_solution(sols).k == min_k);
        CHECK(k0_solution(sols).k + k0_solution(sols).l < 1.0);
    }
}

TEST_CASE("least energy") {
    const ParamSet P = window_ii_tuple();
    CHECK(least_energy(1, 1, 1, P) == doctest::Approx(2 * P.s() / P.N()));
    CHECK(least_energy(0.3, 0.4, 2, P) ==
          doctest::Approx(std::pow(2.0, P.N() / (P.s() * P.p())) * least_energy(0.3, 0.4, 1, P)));
}

TEST_CASE("jacobian") {
    const ParamSet P = window_ii_tuple();
    const auto J0 = jacobian(1.0, 1.0, P, 0.0);
    const double q = (P.p_star() - P.p()) / P.p();
    CHECK(J0[0][0] == doctest::Approx(q).epsilon(1e-12));
    CHECK(J0[1][1] == doctest::Approx(q).epsilon(1e-12));
    CHECK(J0[0][1] == 0.0);
    CHECK(J0[1][0] == 0.0);

    const GammaSystem sys(P, 0.8);
    for (double k : {0.2, 0.7})
        for (double l : {0.3, 0.9}) {
            const auto J = jacobian(k, l, sys);
            const double hk = 1e-6 * k, hl = 1e-6 * l;
            CHECK(J[0][0] == doctest::Approx((F1(k + hk, l, sys) - F1(k - hk, l, sys)) / (2 * hk)).epsilon(1e-6));
            CHECK(J[0][1] == doctest::Approx((F1(k, l + hl, sys) - F1(k, l - hl, sys)) / (2 * hl)).epsilon(1e-6));
            CHECK(J[1][0] == doctest::Approx((F2(k + hk, l, sys) - F2(k - hk, l, sys)) / (2 * hk)).epsilon(1e-6));
            CHECK(J[1][1] == doctest::Approx((F2(k, l + hl, sys) - F2(k, l - hl, sys)) / (2 * hl)).epsilon(1e-6));
        }

    const ParamSet S = ParamSet::from_alpha(1, 0.25, 1.8, P.p_star() / 2);
    const auto A = jacobian(0.3, 0.6, S, 0.5);
    const auto B = jacobian(0.6, 0.3, S, 0.5);
    CHECK(A[0][0] == doctest::Approx(B[1][1]).epsilon(1e-14));
    CHECK(A[0][1] == doctest::Approx(B[1][0]).epsilon(1e-14));
}

TEST_CASE("continuation") {
    const ParamSet P = window_ii_tuple();
    const auto br = continue_branch(P, {1e-6, 1e-4, 1e-2, 0.05, 0.1});
    REQUIRE(!br.failed);
    REQUIRE(br.points.size() == 5);
    CHECK(br.points[0].k == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(br.points[0].l == doctest::Approx(1.0).epsilon(1e-4));
    for (const auto& pt : br.points) CHECK(pt.residual < 1e-10);
    REQUIRE(br.gamma1);
    for (const auto& pt : br.points)
        if (pt.gamma <= *br.gamma1) CHECK(pt.k + pt.l > 1.0);

    // the branch point is one of the roots solve_all reports at the same gamma
    bool matched = false;
    for (const auto& s : solve_all(GammaSystem(P, 1e-2)))
        matched = matched || (std::abs(s.k - br.points[2].k) < 1e-8 && std::abs(s.l - br.points[2].l) < 1e-8);
    CHECK(matched);

    const ParamSet S = ParamSet::from_alpha(1, 0.25, 1.8, P.p_star() / 2);
    for (const auto& pt : continue_branch(S, {1e-3, 1e-2, 0.1}).points) CHECK(pt.k == doctest::Approx(pt.l).epsilon(1e-12));

    CHECK_THROWS_AS(continue_branch(window_i_tuple(), {0.1}), RegimeError);
    CHECK_THROWS(continue_branch(P, {0.1, 0.05}));
}

TEST_CASE("minimality profiles") {
    const ParamSet P = ParamSet::from_alpha(1, 0.5, 1.5, 2.5);
    CHECK(profile_x2(P) == doctest::Approx((P.alpha() - P.p()) / (P.beta() - P.p())));
    CHECK(profile_x2(window_i_tuple()) == doctest::Approx(1.0));
    const GammaSystem sys(P, 0.9 * gamma_upper_threshold(P));
    const double x1 = profile_x1(sys);
    const double g1max = minimality_profiles(x1, sys).g1;
    CHECK(g1max <= 1e-12);
    for (double x : {0.1 * x1, 0.5 * x1, 2 * x1, 10 * x1}) CHECK(minimality_profiles(x, sys).g1 <= g1max);
}

}  // TEST_SUITE
