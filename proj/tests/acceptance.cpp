// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "critcouple/algebraic.hpp"
#include "critcouple/coupling.hpp"
#include "critcouple/gagliardo.hpp"
#include "critcouple/sampling.hpp"
#include "oracle.hpp"

using namespace critcouple;
using coupling::SignCase;

namespace {

constexpr SignCase kCases[] = {SignCase::C1,  SignCase::C2i,  SignCase::C2ii, SignCase::C2iii,
                                SignCase::C3i, SignCase::C3ii, SignCase::C3iii};

struct Verdict {
    bool passed = true;
    std::ostringstream detail;
    void fail(const std::string& what) {
        if (!passed) detail << "; ";
        passed = false;
        detail << what;
    }
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Verdict&)>& body) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) v.fail("took " + num(secs) + " s, budget " + num(budget_s) + " s");
    if (!v.passed) ++failures;
    std::printf("%s criterion %d: %s [%.2f s] %s\n", v.passed ? "PASS" : "FAIL", id, title.c_str(), secs,
                v.detail.str().c_str());
    std::fflush(stdout);
}

/// Runs body(i) for i in [0, n) on a few threads; bodies write to disjoint slots.
void parallel_for(int n, const std::function<void(int)>& body) {
    const int workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

ParamSet random_lattice_tuple(std::mt19937_64& rng, int i) { return sampling::sample_lattice_case(kCases[i % 7], rng); }

// Reference transcription of the algebraic system.
double F1_ref(double k, double l, const ParamSet& P, double g) {
    const long double p = P.p(), ps = P.p_star();
    return static_cast<double>(std::pow((long double)k, (ps - p) / p) +
                               P.alpha() * g / ps * std::pow((long double)k, (P.alpha() - p) / p) *
                                   std::pow((long double)l, P.beta() / p) -
                               1);
}
double F2_ref(double k, double l, const ParamSet& P, double g) { return F1_ref(l, k, P.swapped(), g); }

// ---------------------------------------------------------------------------

std::vector<ParamSet> g_sweep;  // shared by criteria 1 and 3

void classification_sweep(Verdict& v) {
    std::mt19937_64 rng(20240601);
    for (int i = 0; i < 560; ++i) g_sweep.push_back(sampling::sample_any(i, rng));
    const int n = static_cast<int>(g_sweep.size());
    std::vector<std::string> errors(static_cast<std::size_t>(n));
    std::vector<int> widened(static_cast<std::size_t>(n), 0);
    parallel_for(n, [&](int i) {
        const ParamSet& P = g_sweep[static_cast<std::size_t>(i)];
        std::ostringstream id;
        id << "(" << P.N() << "," << P.s() << "," << P.p() << "," << P.alpha() << ")";
        auto s = oracle::scan(P);
        if (!s.ends_settled) {
            widened[static_cast<std::size_t>(i)] = 1;
            s = oracle::scan(P, 100000, 1e-100, 1e100);
        }
        const auto c = coupling::classify(P);
        std::string& err = errors[static_cast<std::size_t>(i)];
        if (!s.ends_settled) err = id.str() + " oracle scan did not reach the limit signs";
        else if (c.case_label != kCases[i % 7]) err = id.str() + " case label";
        else if (static_cast<int>(c.g_roots.size()) != s.sign_changes)
            err = id.str() + " root count " + std::to_string(c.g_roots.size()) + " vs oracle " + std::to_string(s.sign_changes);
        else if (!coupling::root_count_consistent(P, s.sign_changes)) err = id.str() + " root count outside the case table";
        else if ((c.tau_min > 0.0) != coupling::has_positive_tau_min(c.case_label)) err = id.str() + " tau_min vs table";
        else if ((c.tau_min > 0.0) != (s.tau_min > 0.0)) err = id.str() + " tau_min > 0 disagrees with oracle";
        else if ((c.h_minus_one_at_tau_min < 0.0) != (s.phi_min < 0.0)) err = id.str() + " sign of h(tau_min) - 1";
        else if (c.tau_min > 0.0 && std::abs(std::log(c.tau_min / s.tau_min)) > 1e-2)
            err = id.str() + " tau_min " + num(c.tau_min) + " vs grid argmin " + num(s.tau_min);
    });
    int bad = 0;
    for (const auto& e : errors)
        if (!e.empty()) {
            if (bad < 3) v.fail(e);
            ++bad;
        }
    int wide = 0;
    for (int w : widened) wide += w;
    if (bad) v.fail(std::to_string(bad) + " mismatches");
    v.detail << n << " tuples, 80 per case, 1e5-point oracle scans (" << wide << " widened)";
}

void derivative_identity(Verdict& v) {
    std::mt19937_64 rng(77);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const ParamSet P = sampling::sample_any(i, rng);
        const auto e = oracle::exps(P);
        for (int k = 0; k < 100; ++k) {
            const double t = std::pow(10.0, -3.0 + 6.0 * k / 99.0);
            const double fd = static_cast<double>(oracle::h_derivative(t, e));
            const double hp = coupling::h_prime(t, P);
            worst = std::max(worst, std::abs(hp - fd) / std::max(1.0, std::abs(hp)));
        }
    }
    if (!(worst < 1e-6)) v.fail("max error " + num(worst));
    v.detail << "50 tuples x 100 points, max relative error " << num(worst);
}

void sync_relations(Verdict& v) {
    int count = 0;
    double worst = 0.0;
    for (const ParamSet& P : g_sweep) {
        const auto c = coupling::classify(P);
        if (!(c.tau_min > 0.0)) continue;
        ++count;
        const long double l = c.lambda, m = c.mu, p = P.p(), ps = P.p_star(), a = P.alpha(), b = P.beta();
        const long double r1 = std::fabs(std::pow(l, ps - p) + (a / ps) * std::pow(m, b) * std::pow(l, a - p) - 1);
        const long double r2 = std::fabs(std::pow(m, ps - p) + (b / ps) * std::pow(m, b - p) * std::pow(l, a) - 1);
        const auto lib = coupling::verify_sync_relations(c, P);
        worst = std::max({worst, static_cast<double>(r1), static_cast<double>(r2), lib.first, lib.second});
    }
    if (!(worst < 1e-9)) v.fail("max residual " + num(worst));
    if (count == 0) v.fail("no tuple with tau_min > 0");
    v.detail << count << " tuples with tau_min > 0, max residual " << num(worst);
}

void algebraic_system(Verdict& v) {
    std::mt19937_64 rng(99);
    std::vector<ParamSet> wi, wii;
    for (int i = 0; i < 50; ++i) wi.push_back(sampling::sample_window(EnergyWindow::WindowI, rng));
    for (int i = 0; i < 50; ++i) wii.push_back(sampling::sample_window(EnergyWindow::WindowII, rng));
    struct Out {
        double residual = 0.0;
        double sum = 0.0;
        std::string error;
        int feasible = 0;
    };
    std::vector<Out> out(100);
    std::vector<std::uint64_t> seeds(100);
    for (auto& s : seeds) s = rng();
    parallel_for(100, [&](int i) {
        Out& o = out[static_cast<std::size_t>(i)];
        const bool first = i < 50;
        const ParamSet& P = first ? wi[static_cast<std::size_t>(i)] : wii[static_cast<std::size_t>(i - 50)];
        const double gamma =
            first ? 0.5 * algebraic::gamma_upper_threshold(P) : 2.0 * algebraic::gamma_lower_threshold(P);
        const auto sols = algebraic::solve_all(algebraic::GammaSystem(P, gamma));
        for (const auto& s : sols)
            o.residual = std::max({o.residual, std::abs(F1_ref(s.k, s.l, P, gamma)), std::abs(F2_ref(s.k, s.l, P, gamma))});
        const auto& k0 = algebraic::k0_solution(sols);
        o.sum = k0.k + k0.l;
        if (!first) {
            if (!(o.sum < 1.0)) o.error = "Window_ii k0 + l0 = " + num(o.sum);
            return;
        }
        std::mt19937_64 r(seeds[static_cast<std::size_t>(i)]);
        std::uniform_real_distribution<double> U(1e-9, 1.2);
        for (int j = 0; j < 10000; ++j) {
            const double c = U(r), d = U(r);
            if (F1_ref(c, d, P, gamma) >= 0.0 && F2_ref(c, d, P, gamma) >= 0.0) {
                ++o.feasible;
                if (c + d < o.sum - 1e-9) {
                    o.error = "(c, d) below k0 + l0";
                    break;
                }
            }
        }
    });
    double worst = 0.0;
    int feasible = 0;
    for (const auto& o : out) {
        worst = std::max(worst, o.residual);
        feasible += o.feasible;
        if (!o.error.empty()) v.fail(o.error);
    }
    if (!(worst < 1e-10)) v.fail("root residual " + num(worst));
    v.detail << "50 + 50 systems, max |F| " << num(worst) << ", " << feasible << " feasible of 5e5 samples";
}

void jacobian_and_branch(Verdict& v) {
    std::mt19937_64 rng(5);
    double jac = 0.0, branch = 0.0;
    for (int i = 0; i < 20; ++i) {
        const ParamSet P = sampling::sample_window(EnergyWindow::WindowII, rng);
        const double q = (P.p_star() - P.p()) / P.p();
        for (double g : {0.0, 1e-14}) {
            const auto J = algebraic::jacobian(1.0, 1.0, P, g);
            jac = std::max({jac, std::abs(J[0][0] - q), std::abs(J[1][1] - q), std::abs(J[0][1]), std::abs(J[1][0])});
        }
        const auto br = algebraic::continue_branch(P, {1e-6});
        if (br.failed || br.points.empty()) {
            v.fail("continuation failed");
            continue;
        }
        const auto& pt = br.points.front();
        branch = std::max({branch, std::abs(pt.k + pt.l - 2.0), std::abs(pt.k - 1.0), std::abs(pt.l - 1.0)});
    }
    if (!(jac < 1e-10)) v.fail("Jacobian error " + num(jac));
    if (!(branch < 1e-4)) v.fail("branch offset " + num(branch));
    v.detail << "20 tuples, Jacobian error " << num(jac) << ", |k + l - 2| at 1e-6 <= " << num(branch);
}

void discrete_identity(Verdict& v) {
    const gagliardo::Grid1D grid(20.0, 128);
    const double tuples[2][4] = {{1, 0.25, 1.8, 1.5}, {1, 0.5, 1.5, 1.2}};
    for (const auto& t : tuples) {
        const ParamSet P = ParamSet::from_alpha(static_cast<int>(t[0]), t[1], t[2], t[3]);
        const auto c = coupling::classify(P);
        const auto init = gagliardo::default_init(grid);
        const auto rs = gagliardo::minimize_scalar(init, P);
        const auto rv = gagliardo::minimize_vector(init, init.scaled(c.tau_min), 1.0, 0.0, P);
        const double gap = std::abs(rv.value - c.h_at_tau_min * rs.value) / rs.value;
        if (!(gap < 1e-3)) v.fail("gap " + num(gap));
        if (!rs.converged || !rv.converged) v.fail("optimizer did not converge");
        v.detail << "(" << t[1] << "," << t[2] << "," << t[3] << ") gap " << num(gap) << "  ";
    }
}

void proportional_pairs(Verdict& v) {
    std::mt19937_64 rng(41);
    const gagliardo::Grid1D grid(20.0, 64);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const ParamSet P = random_lattice_tuple(rng, i);
        const auto w = gagliardo::random_function(grid, rng());
        const double tau = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
        const double factor = static_cast<double>(oracle::h(tau, oracle::exps(P)));
        const double lhs = gagliardo::vector_quotient(w, w.scaled(tau), 1.0, 0.0, P);
        const double rhs = factor * gagliardo::scalar_quotient(w, P);
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    if (!(worst < 1e-10)) v.fail("max error " + num(worst));
    v.detail << "100 pairs, max relative error " << num(worst);
}

void synchronized_solution(Verdict& v) {
    const gagliardo::Grid1D grid(20.0, 128);
    gagliardo::OptimizerOptions opts;
    opts.tol = 1e-16;
    const double tuples[2][4] = {{1, 0.25, 1.8, 1.5}, {1, 0.5, 1.5, 1.2}};
    for (const auto& t : tuples) {
        const ParamSet P = ParamSet::from_alpha(static_cast<int>(t[0]), t[1], t[2], t[3]);
        const auto rs = gagliardo::minimize_scalar(gagliardo::default_init(grid), P, opts);
        const auto U = gagliardo::normalize_to_solution(rs.minimizer, P);
        const auto c = coupling::classify(P);
        const double pair = gagliardo::el_residual_system(U.scaled(c.lambda), U.scaled(c.mu), 1.0, P);
        if (!(pair < 1e-5)) v.fail("pair residual " + num(pair));
        v.detail << "(" << t[1] << "," << t[2] << "," << t[3] << ") residual " << num(pair) << "  ";
    }
}

void nehari_identity(Verdict& v) {
    std::mt19937_64 rng(53);
    const gagliardo::Grid1D grid(20.0, 48);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const ParamSet P = random_lattice_tuple(rng, i);
        const double gamma = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
        const auto u = gagliardo::random_function(grid, rng());
        const auto w = gagliardo::random_function(grid, rng());
        const auto pr = gagliardo::nehari_project(u, w, gamma, P);
        const double norms = gagliardo::seminorm_p(pr.u, P) + gagliardo::seminorm_p(pr.v, P);
        const double J = gagliardo::j_energy(pr.u, pr.v, gamma, 0.0, P);
        worst = std::max(worst, std::abs(J - P.s() / P.N() * norms) / (1.0 + std::abs(J)));
    }
    if (!(worst < 1e-10)) v.fail("max error " + num(worst));
    v.detail << "100 pairs, max scaled error " << num(worst);
}

}  // namespace

int main() {
    criterion(1, "classification sweep against dense sign-scan oracle", 30, classification_sweep);
    criterion(2, "h' = f g against central differences", 5, derivative_identity);
    criterion(3, "synchronized relations at (lambda, mu)", 1, sync_relations);
    criterion(4, "algebraic roots, minimality sampling, k0 + l0 < 1", 60, algebraic_system);
    criterion(5, "Jacobian at (1, 1) and continuation from 1e-6", 5, jacobian_and_branch);
    criterion(6, "discrete S_ab = h(tau_min) S on n = 128, L = 20", 300, discrete_identity);
    criterion(7, "proportional-pair quotient identity", 10, proportional_pairs);
    criterion(8, "synchronized discrete solution residual", 120, synchronized_solution);
    criterion(9, "Nehari energy identity", 5, nehari_identity);
    std::printf("%s (%d of 9 failed)\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED", failures);
    return failures ? 1 : 0;
}
