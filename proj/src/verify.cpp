#include "critcouple/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "critcouple/algebraic.hpp"
#include "critcouple/coupling.hpp"
#include "critcouple/exponents.hpp"
#include "critcouple/gagliardo.hpp"
#include "critcouple/io.hpp"
#include "critcouple/sampling.hpp"

#ifndef CRITCOUPLE_GOLDEN_PATH
#define CRITCOUPLE_GOLDEN_PATH "data/golden.csv"
#endif

namespace critcouple::verify {

namespace {

using coupling::SignCase;

/// Outcome of one check body: empty string means pass, otherwise the failure detail.
struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void fail(const std::string& what) {
        if (!passed) detail << "; ";
        passed = false;
        detail << what;
    }
    void note(const std::string& what) {
        if (passed) detail << what;
    }
};

using Body = std::function<void(Outcome&, const SuiteOptions&, std::mt19937_64&)>;

struct Check {
    std::string name;
    Body body;
};

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt(double x) { return io::format_real(x); }

constexpr std::array<SignCase, 7> kCases{SignCase::C1,  SignCase::C2i,  SignCase::C2ii, SignCase::C2iii,
                                          SignCase::C3i, SignCase::C3ii, SignCase::C3iii};

// ---------------------------------------------------------------------------
// exponents

void exponents_sobolev_identity(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ParamSet P = sampling::sample_any(i, rng);
        const double lhs = 1.0 / P.p() - 1.0 / P.p_star();
        worst = std::max(worst, rel_err(lhs, P.s() / P.N()));
    }
    if (worst > 1e-12) o.fail("1/p - 1/p* differs from s/N by " + fmt(worst));
    o.note("max relative error " + fmt(worst));
}

void exponents_validation(Outcome& o, const SuiteOptions&, std::mt19937_64&) {
    try {
        validate_params(1.5, 1.2, 0.5, 0.5, 0.5);
        o.fail("invalid tuple accepted");
    } catch (const ValidationError& e) {
        if (e.violations().size() < 4)
            o.fail("expected at least 4 violations, got " + std::to_string(e.violations().size()));
        o.note(std::to_string(e.violations().size()) + " violations reported");
    }
    const ParamSet P = ParamSet::from_alpha(1, 0.25, 1.8, 1.6);
    if (regime_classify(P).window != EnergyWindow::WindowII) o.fail("(1, 0.25, 1.8, 1.6) is not Window_ii");
    const ParamSet Q = ParamSet::from_alpha(1, 0.5, 1.5, 3.0);
    if (regime_classify(Q).window != EnergyWindow::WindowI) o.fail("(1, 0.5, 1.5, 3) is not Window_i");
}

// ---------------------------------------------------------------------------
// coupling

void coupling_h_limits(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    for (int i = 0; i < 70; ++i) {
        const ParamSet P = sampling::sample_any(i, rng);
        if (coupling::h_eval(0.0, P) != 1.0) o.fail("h(0) != 1");
        if (std::abs(coupling::h_eval(1e6, P) - 1.0) > 1e-3) o.fail("h(1e6) not within 1e-3 of 1");
        if (std::abs(coupling::g_eval(1.0, P) - (P.alpha() - P.beta())) > 1e-12 * P.p_star())
            o.fail("g(1) != alpha - beta");
    }
}

void coupling_derivative_identity(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const ParamSet P = sampling::sample_any(i, rng);
        for (int k = 0; k < 100; ++k) {
            const double tau = std::pow(10.0, -2.0 + 4.0 * (k + 0.5) / 100.0);
            const double hstep = 1e-6 * tau;
            const double fd = (coupling::h_eval(tau + hstep, P) - coupling::h_eval(tau - hstep, P)) / (2 * hstep);
            const double an = coupling::h_prime(tau, P);
            const double scale = std::max(std::abs(fd), 1e-3 * std::abs(coupling::h_eval(tau, P)) / tau);
            worst = std::max(worst, std::abs(fd - an) / scale);
        }
    }
    if (worst > 1e-6) o.fail("h' and f g disagree with finite differences by " + fmt(worst));
    o.note("max relative error " + fmt(worst));
}

void coupling_case_table(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    int n = 0;
    for (int i = 0; i < 504; ++i) {
        const ParamSet P = sampling::sample_any(i, rng);
        const auto c = coupling::classify(P);
        ++n;
        const bool positive = c.tau_min > 0.0;
        if (!coupling::root_count_consistent(P, static_cast<int>(c.g_roots.size())))
            o.fail("case " + std::string(coupling::to_string(c.case_label)) + ": " + std::to_string(c.g_roots.size()) +
                   " roots");
        if (positive != coupling::has_positive_tau_min(c.case_label))
            o.fail("case " + std::string(coupling::to_string(c.case_label)) + ": tau_min = " + fmt(c.tau_min));
        if (positive != (c.h_minus_one_at_tau_min < 0.0))
            o.fail("sign of h(tau_min) - 1 wrong at tau_min = " + fmt(c.tau_min));
        for (double r : c.g_roots) {
            if (std::abs(coupling::g_eval(r, P)) >= 1e-10 * coupling::g_magnitude(r, P))
                o.fail("root " + fmt(r) + " has |g| = " + fmt(std::abs(coupling::g_eval(r, P))));
        }
    }
    o.note(std::to_string(n) + " tuples");
}

void coupling_sync_relations(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    double worst = 0.0;
    int n = 0;
    for (int i = 0; i < 210; ++i) {
        const ParamSet P = sampling::sample_any(i, rng);
        const auto c = coupling::classify(P);
        if (!(c.tau_min > 0.0)) continue;
        const auto r = coupling::verify_sync_relations(c, P);
        worst = std::max({worst, r.first, r.second});
        ++n;
        if (!r.ok()) {
            for (const auto& name : r.failing()) o.fail(name + " residual too large");
        }
    }
    o.note(std::to_string(n) + " tuples, max residual " + fmt(worst));
}

void coupling_golden(Outcome& o, const SuiteOptions& opts, std::mt19937_64&) {
    const auto table = io::read_csv(opts.golden_path);
    const std::vector<std::string> expected{"N",       "s",      "p",          "alpha",        "p_star",
                                            "root_count", "tau_min", "h_at_tau_min", "lambda", "mu"};
    if (table.header != expected) {
        o.fail("unexpected golden header");
        return;
    }
    for (const auto& r : table.rows) {
        const ParamSet P = ParamSet::from_alpha(static_cast<int>(r[0]), r[1], r[2], r[3]);
        const auto c = coupling::classify(P);
        std::ostringstream id;
        id << "(" << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << ")";
        if (rel_err(P.p_star(), r[4]) > 1e-12) o.fail(id.str() + " p_star");
        if (static_cast<double>(c.g_roots.size()) != r[5]) o.fail(id.str() + " root_count");
        const auto close = [](double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); };
        if (!close(c.tau_min, r[6], 1e-9)) o.fail(id.str() + " tau_min");
        if (!close(c.h_at_tau_min, r[7], 1e-12)) o.fail(id.str() + " h_at_tau_min");
        if (!close(c.lambda, r[8], 1e-9)) o.fail(id.str() + " lambda");
        if (!close(c.mu, r[9], 1e-9)) o.fail(id.str() + " mu");
    }
    o.note(std::to_string(table.rows.size()) + " reference rows");
}

// ---------------------------------------------------------------------------
// algebraic

void algebraic_threshold_example(Outcome& o, const SuiteOptions&, std::mt19937_64&) {
    const ParamSet P = ParamSet::from_alpha(1, 0.5, 1.5, 3.0);
    const double t = algebraic::gamma_upper_threshold(P);
    if (std::abs(t - 6.0) > 1e-12) o.fail("upper threshold " + fmt(t) + " != 6");
}

void algebraic_roots(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int w = 0; w < 2; ++w) {
        for (int i = 0; i < 10; ++i) {
            const ParamSet P = sampling::sample_window(w ? EnergyWindow::WindowII : EnergyWindow::WindowI, rng);
            const double gamma =
                w ? 2.0 * algebraic::gamma_lower_threshold(P) : 0.5 * algebraic::gamma_upper_threshold(P);
            const algebraic::GammaSystem sys(P, gamma);
            const auto sols = algebraic::solve_all(sys);
            for (const auto& s : sols) worst = std::max({worst, std::abs(s.residual_F1), std::abs(s.residual_F2)});
            const auto& k0 = algebraic::k0_solution(sols);
            if (w == 1 && !(k0.k + k0.l < 1.0)) o.fail("Window_ii k0 + l0 = " + fmt(k0.k + k0.l) + " >= 1");
        }
    }
    if (worst >= 1e-10) o.fail("root residual " + fmt(worst));
    o.note("max residual " + fmt(worst));
}

void algebraic_minimality_sampling(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    int feasible = 0;
    for (int i = 0; i < 5; ++i) {
        const ParamSet P = sampling::sample_window(EnergyWindow::WindowI, rng);
        const algebraic::GammaSystem sys(P, 0.5 * algebraic::gamma_upper_threshold(P));
        const auto k0 = algebraic::k0_solution(algebraic::solve_all(sys));
        std::uniform_real_distribution<double> U(1e-6, 1.5);
        for (int j = 0; j < 2000; ++j) {
            const double c = U(rng);
            const double d = U(rng);
            if (algebraic::F1(c, d, sys) >= 0.0 && algebraic::F2(c, d, sys) >= 0.0) {
                ++feasible;
                if (c + d < k0.k + k0.l - 1e-9) o.fail("(c, d) = (" + fmt(c) + ", " + fmt(d) + ") beats k0 + l0");
            }
        }
        if (algebraic::minimality_profiles(algebraic::profile_x1(sys), sys).g1 > 1e-12) o.fail("g1(x1) > 0");
    }
    o.note(std::to_string(feasible) + " feasible samples");
}

void algebraic_window_ii_properties(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    for (int i = 0; i < 3; ++i) {
        const ParamSet P = sampling::sample_window(EnergyWindow::WindowII, rng);
        const algebraic::GammaSystem sys(P, 2.0 * algebraic::gamma_lower_threshold(P));
        const auto k0 = algebraic::k0_solution(algebraic::solve_all(sys));
        // Slope bound.
        double min_slope = 0.0;
        for (int j = 1; j <= 10000; ++j) min_slope = std::min(min_slope, algebraic::ell_prime(j / 10000.0, sys));
        if (min_slope < -1.0 - 1e-9) o.fail("min ell' = " + fmt(min_slope));
        // Ordering below k0.
        for (int j = 1; j < 1000; ++j) {
            const double k = k0.k * j / 1000.0;
            if (!(algebraic::F2(k, algebraic::ell_of_k(k, sys), sys) < 0.0)) {
                o.fail("F2(k, l(k)) >= 0 at k = " + fmt(k) + " < k0");
                break;
            }
        }
        // Uniqueness on a 1e-3 lattice.
        const double target = k0.k + k0.l;
        for (int a = 1; a <= 1000; ++a) {
            const double k = a * 1e-3;
            if (k > target) break;
            for (int b = 1; b <= 1000; ++b) {
                const double l = b * 1e-3;
                if (k + l > target) break;
                if (std::hypot(k - k0.k, l - k0.l) < 2e-3) continue;
                if (algebraic::F1(k, l, sys) >= -1e-9 && algebraic::F2(k, l, sys) >= -1e-9) {
                    o.fail("feasible (" + fmt(k) + ", " + fmt(l) + ") with k + l <= k0 + l0");
                    a = 1001;
                    break;
                }
            }
        }
    }
}

void algebraic_branch(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    const ParamSet P = sampling::sample_window(EnergyWindow::WindowII, rng);
    const auto J = algebraic::jacobian(1.0, 1.0, P, 0.0);
    const double q = (P.p_star() - P.p()) / P.p();
    if (std::abs(J[0][0] - q) > 1e-10 || std::abs(J[1][1] - q) > 1e-10 || std::abs(J[0][1]) > 1e-10 ||
        std::abs(J[1][0]) > 1e-10)
        o.fail("Jacobian at (1, 1, 0) is not diag(q, q)");
    const auto br = algebraic::continue_branch(P, {1e-6});
    if (br.failed || br.points.empty()) {
        o.fail("continuation failed: " + br.failure);
        return;
    }
    const auto& pt = br.points.back();
    if (std::abs(pt.k + pt.l - 2.0) > 1e-4) o.fail("k + l at gamma = 1e-6 is " + fmt(pt.k + pt.l));
    o.note("k + l at 1e-6: " + fmt(pt.k + pt.l));
}

// ---------------------------------------------------------------------------
// gagliardo

ParamSet lattice_params(std::mt19937_64& rng, int i) {
    return sampling::sample_lattice_case(kCases[static_cast<std::size_t>(i % 7)], rng);
}

void gagliardo_homogeneity(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    const gagliardo::Grid1D grid(20.0, 64);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const ParamSet P = lattice_params(rng, i);
        const auto u = gagliardo::random_function(grid, rng(), -1.0, 1.0);
        const double c = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
        const double a = gagliardo::seminorm_p(u.scaled(c), P);
        const double b = std::pow(std::abs(c), P.p()) * gagliardo::seminorm_p(u, P);
        worst = std::max(worst, rel_err(a, b));
    }
    if (worst >= 1e-12) o.fail("homogeneity error " + fmt(worst));
    o.note("max relative error " + fmt(worst));
}

void gagliardo_euler_identity(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const ParamSet P = lattice_params(rng, i);
        const gagliardo::Grid1D grid(std::uniform_real_distribution<double>(1.0, 30.0)(rng), 32 + (i % 5) * 8,
                                     i % 2 == 0);
        const auto u = gagliardo::random_function(grid, rng(), -1.0, 1.0);
        const auto Au = gagliardo::frac_p_laplacian_apply(u, P);
        double dot = 0.0;
        for (int k = 0; k < grid.n(); ++k) dot += Au[k] * u[k];
        worst = std::max(worst, rel_err(dot * grid.delta(), gagliardo::seminorm_p(u, P)));
    }
    if (worst >= 1e-10) o.fail("Euler identity error " + fmt(worst));
    o.note("max relative error " + fmt(worst));
}

void gagliardo_gradient_check(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    const gagliardo::Grid1D grid(20.0, 64);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const ParamSet P = lattice_params(rng, i);
        const auto u = gagliardo::random_function(grid, rng(), -1.0, 1.0);
        const auto Au = gagliardo::frac_p_laplacian_apply(u, P);
        std::vector<double> fd(64), an(64);
        for (int k = 0; k < 64; ++k) {
            std::vector<double> plus(u.values().begin(), u.values().end());
            std::vector<double> minus = plus;
            const double h = 1e-6;
            plus[static_cast<std::size_t>(k)] += h;
            minus[static_cast<std::size_t>(k)] -= h;
            const double ep = gagliardo::seminorm_p(gagliardo::DiscreteFunction(grid, plus), P);
            const double em = gagliardo::seminorm_p(gagliardo::DiscreteFunction(grid, minus), P);
            fd[static_cast<std::size_t>(k)] = (ep - em) / (2 * h);
            an[static_cast<std::size_t>(k)] = P.p() * grid.delta() * Au[k];
        }
        double num = 0.0, den = 0.0;
        for (int k = 0; k < 64; ++k) {
            num += (fd[static_cast<std::size_t>(k)] - an[static_cast<std::size_t>(k)]) *
                   (fd[static_cast<std::size_t>(k)] - an[static_cast<std::size_t>(k)]);
            den += an[static_cast<std::size_t>(k)] * an[static_cast<std::size_t>(k)];
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    if (worst >= 1e-6) o.fail("gradient error " + fmt(worst));
    o.note("max relative error " + fmt(worst));
}

void gagliardo_proportional_pair(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    const gagliardo::Grid1D grid(20.0, 64);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const ParamSet P = lattice_params(rng, i);
        const auto w = gagliardo::random_function(grid, rng());
        const double tau = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
        const double lhs = gagliardo::vector_quotient(w, w.scaled(tau), 1.0, 0.0, P);
        const double rhs = coupling::h_eval(tau, P) * gagliardo::scalar_quotient(w, P);
        worst = std::max(worst, rel_err(lhs, rhs));
    }
    if (worst >= 1e-10) o.fail("proportional-pair error " + fmt(worst));
    o.note("max relative error " + fmt(worst));
}

void gagliardo_nehari_energy(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    const gagliardo::Grid1D grid(20.0, 48);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const ParamSet P = lattice_params(rng, i);
        const double gamma = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
        const auto u = gagliardo::random_function(grid, rng());
        const auto v = gagliardo::random_function(grid, rng());
        const auto pr = gagliardo::nehari_project(u, v, gamma, P);
        const double E = gagliardo::seminorm_p(pr.u, P) + gagliardo::seminorm_p(pr.v, P);
        const double J = gagliardo::j_energy(pr.u, pr.v, gamma, 0.0, P);
        const double err = std::abs(J - (P.s() / P.N()) * E) / (1.0 + std::abs(J));
        worst = std::max(worst, err);
    }
    if (worst >= 1e-10) o.fail("Nehari energy error " + fmt(worst));
    o.note("max scaled error " + fmt(worst));
}

void gagliardo_spike(Outcome& o, const SuiteOptions&, std::mt19937_64&) {
    const ParamSet P = ParamSet::from_alpha(1, 0.3, 1.7, 1.4);
    const gagliardo::Grid1D grid(10.0, 40, false);
    const int i0 = 13;
    const double amp = 1.7;
    std::vector<double> v(40, 0.0);
    v[i0] = amp;
    const gagliardo::DiscreteFunction u(grid, v);
    double sum = 0.0;
    for (int j = 0; j < 40; ++j)
        if (j != i0) sum += std::pow(std::abs(grid.x(i0) - grid.x(j)), -1.0 - P.s() * P.p());
    const double expected = 2.0 * std::pow(amp, P.p()) * grid.delta() * grid.delta() * sum;
    const double got = gagliardo::seminorm_p(u, P);
    if (rel_err(got, expected) > 1e-13) o.fail("single-cell energy " + fmt(got) + " vs " + fmt(expected));
}

void gagliardo_mask_monotonicity(Outcome& o, const SuiteOptions&, std::mt19937_64&) {
    const ParamSet P = ParamSet::from_alpha(1, 0.25, 1.8, 1.5);
    const gagliardo::Grid1D grid(20.0, 64);
    gagliardo::OptimizerOptions opts;
    opts.symmetrize = true;
    double previous = 0.0;
    bool first = true;
    for (double R : {20.0, 10.0, 5.0, 2.5}) {
        const auto g = grid.with_ball_mask(R);
        const auto r = gagliardo::minimize_scalar(gagliardo::default_init(g, 1.0), P, opts);
        if (!first && r.value < previous * (1.0 - 1e-9))
            o.fail("R = " + fmt(R) + " lowered the quotient to " + fmt(r.value));
        previous = r.value;
        first = false;
    }
}

void gagliardo_discrete_identity(Outcome& o, const SuiteOptions&, std::mt19937_64&) {
    const ParamSet P = ParamSet::from_alpha(1, 0.25, 1.8, 1.5);
    const gagliardo::Grid1D grid(20.0, 128);
    const auto c = coupling::classify(P);
    const auto init = gagliardo::default_init(grid, 1.0);
    const auto rs = gagliardo::minimize_scalar(init, P);
    const auto rv = gagliardo::minimize_vector(init, init.scaled(c.tau_min), 1.0, 0.0, P);
    const double gap = std::abs(rv.value - c.h_at_tau_min * rs.value) / rs.value;
    if (!(gap < 1e-3)) o.fail("relative gap " + fmt(gap));
    for (std::size_t k = 1; k < rs.history.size(); ++k)
        if (rs.history[k] > rs.history[k - 1]) o.fail("scalar objective increased");
    o.note("relative gap " + fmt(gap));
}

void gagliardo_synchronized_residual(Outcome& o, const SuiteOptions&, std::mt19937_64&) {
    const ParamSet P = ParamSet::from_alpha(1, 0.25, 1.8, 1.5);
    const gagliardo::Grid1D grid(20.0, 128);
    gagliardo::OptimizerOptions opts;
    opts.tol = 1e-16;
    const auto rs = gagliardo::minimize_scalar(gagliardo::default_init(grid, 1.0), P, opts);
    const auto U = gagliardo::normalize_to_solution(rs.minimizer, P);
    const auto c = coupling::classify(P);
    const double scalar = gagliardo::el_residual_system(U, gagliardo::DiscreteFunction::zeros(grid), 0.0, P);
    const double pair = gagliardo::el_residual_system(U.scaled(c.lambda), U.scaled(c.mu), 1.0, P);
    if (!(pair < 10.0 * scalar)) o.fail("pair residual " + fmt(pair) + " vs scalar " + fmt(scalar));
    if (!(pair < 1e-5)) o.fail("pair residual " + fmt(pair));
    o.note("pair residual " + fmt(pair));
}

// ---------------------------------------------------------------------------
// cli plumbing

void cli_config_roundtrip(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        io::RunConfig c;
        c.params = io::ParamInput{static_cast<double>(1 + i % 4), U(rng), 1.0 + 3.0 * U(rng), 1.0 + U(rng)};
        if (i % 2) c.gamma = U(rng) * 1e-3;
        c.grid_n = 16 + i;
        c.half_width = 1.0 / 3.0 + U(rng);
        c.tol = U(rng) * 1e-11;
        c.seed = static_cast<std::uint64_t>(i) * 977;
        if (i % 3 == 0) c.mask_radius = U(rng) * 7.0;
        c.eps_shift = U(rng) / 7.0;
        c.gamma_grid = {U(rng), 1.0 / 3.0, 1e-300};
        if (i % 5 == 0) c.S = U(rng);
        c.symmetrize = i % 2 == 0;
        c.filter = i % 2 ? "coupling,algebraic" : "";
        if (!(io::parse_config(io::format_config(c)) == c)) {
            o.fail("config did not round-trip");
            return;
        }
    }
}

void cli_csv_roundtrip(Outcome& o, const SuiteOptions&, std::mt19937_64& rng) {
    const gagliardo::Grid1D grid(7.3, 37);
    const auto u = gagliardo::random_function(grid, rng());
    const auto path = std::filesystem::temp_directory_path() / ("critcouple_verify_" + std::to_string(rng()) + ".csv");
    io::write_function_csv(path, u);
    const auto back = io::read_function_csv(path, grid);
    std::filesystem::remove(path);
    for (int i = 0; i < grid.n(); ++i) {
        if (back[i] != u[i]) {
            o.fail("value at cell " + std::to_string(i) + " changed");
            return;
        }
    }
}

const std::vector<Check>& registry() {
    static const std::vector<Check> checks{
        {"exponents.sobolev_identity", exponents_sobolev_identity},
        {"exponents.validation", exponents_validation},
        {"coupling.h_limits", coupling_h_limits},
        {"coupling.derivative_identity", coupling_derivative_identity},
        {"coupling.case_table", coupling_case_table},
        {"coupling.sync_relations", coupling_sync_relations},
        {"coupling.golden", coupling_golden},
        {"algebraic.threshold_example", algebraic_threshold_example},
        {"algebraic.roots", algebraic_roots},
        {"algebraic.minimality_sampling", algebraic_minimality_sampling},
        {"algebraic.window_ii_properties", algebraic_window_ii_properties},
        {"algebraic.branch", algebraic_branch},
        {"gagliardo.homogeneity", gagliardo_homogeneity},
        {"gagliardo.euler_identity", gagliardo_euler_identity},
        {"gagliardo.gradient_check", gagliardo_gradient_check},
        {"gagliardo.single_cell", gagliardo_spike},
        {"gagliardo.proportional_pair", gagliardo_proportional_pair},
        {"gagliardo.nehari_energy", gagliardo_nehari_energy},
        {"gagliardo.mask_monotonicity", gagliardo_mask_monotonicity},
        {"gagliardo.discrete_identity", gagliardo_discrete_identity},
        {"gagliardo.synchronized_residual", gagliardo_synchronized_residual},
        {"cli.config_roundtrip", cli_config_roundtrip},
        {"cli.csv_roundtrip", cli_csv_roundtrip},
    };
    return checks;
}

}  // namespace

std::filesystem::path default_golden_path() { return CRITCOUPLE_GOLDEN_PATH; }

std::vector<std::string> check_names() {
    std::vector<std::string> out;
    for (const auto& c : registry()) out.push_back(c.name);
    return out;
}

bool selected(const std::string& name, const std::string& filter) {
    if (filter.empty()) return true;
    std::istringstream is(filter);
    std::string sel;
    while (std::getline(is, sel, ',')) {
        if (sel.empty()) continue;
        if (name == sel || name.rfind(sel + ".", 0) == 0) return true;
    }
    return false;
}

std::vector<CheckResult> run_suite(const SuiteOptions& opts) {
    SuiteOptions o = opts;
    if (o.golden_path.empty()) o.golden_path = default_golden_path();
    std::vector<CheckResult> out;
    for (const auto& c : registry()) {
        if (!selected(c.name, o.filter)) continue;
        // Each check gets its own generator so filtering does not change what it samples.
        std::seed_seq seq{static_cast<std::uint64_t>(o.seed), static_cast<std::uint64_t>(std::hash<std::string>{}(c.name))};
        std::mt19937_64 rng(seq);
        Outcome res;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(res, o, rng);
        } catch (const std::exception& e) {
            res.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back({c.name, res.passed, res.detail.str(), secs});
    }
    return out;
}

std::string summary_json(const std::vector<CheckResult>& results) {
    nlohmann::json j;
    bool all = true;
    j["checks"] = nlohmann::json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        j["checks"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    }
    j["passed"] = all;
    return j.dump(2);
}

}  // namespace critcouple::verify
