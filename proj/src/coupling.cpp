#include "critcouple/coupling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "critcouple/roots.hpp"

namespace critcouple::coupling {

namespace {

constexpr double kGridStart = 1e-8;
constexpr double kSmallestTau = 1e-300;

// Sign of g_eta as tau -> 0+.
int left_boundary_sign(const ParamSet& P, double eta) {
    const double b = P.beta();
    if (exponent_equal(b, P.p())) return roots::sign_of(eta * P.p_star() - b);
    return b < P.p() ? -1 : 1;
}

}  // namespace

SignCase sign_case(const ParamSet& P) {
    const double p = P.p();
    const bool a_eq = exponent_equal(P.alpha(), p);
    const bool b_eq = exponent_equal(P.beta(), p);
    if (!b_eq && P.beta() < p) return SignCase::C1;
    if (b_eq) {
        if (a_eq) return SignCase::C2i;
        return P.alpha() < p ? SignCase::C2ii : SignCase::C2iii;
    }
    if (a_eq) return SignCase::C3iii;
    return P.alpha() < p ? SignCase::C3ii : SignCase::C3i;
}

std::string_view to_string(SignCase c) {
    switch (c) {
        case SignCase::C1: return "1";
        case SignCase::C2i: return "2i";
        case SignCase::C2ii: return "2ii";
        case SignCase::C2iii: return "2iii";
        case SignCase::C3i: return "3i";
        case SignCase::C3ii: return "3ii";
        case SignCase::C3iii: return "3iii";
    }
    return "?";
}

bool has_positive_tau_min(SignCase c) {
    return c == SignCase::C1 || c == SignCase::C2ii || c == SignCase::C3ii;
}

int expected_root_count(const ParamSet& P) {
    switch (sign_case(P)) {
        case SignCase::C1:
            return (exponent_equal(P.alpha(), P.p()) || P.alpha() > P.p()) ? 2 : 1;
        case SignCase::C2ii:
        case SignCase::C3ii:
            return 2;
        default:
            return 1;
    }
}

bool root_count_consistent(const ParamSet& P, int count) {
    const int base = expected_root_count(P);
    if (sign_case(P) != SignCase::C1) return count == base;
    return count >= base && (count - base) % 2 == 0;
}

double h_eval(double tau, const ParamSet& P) {
    const double num = 1.0 + std::pow(tau, P.p());
    const double den = 1.0 + std::pow(tau, P.beta()) + std::pow(tau, P.p_star());
    return num / std::pow(den, P.p() / P.p_star());
}

double h_minus_one(double tau, const ParamSet& P) {
    if (!(tau >= 0.0)) throw DomainError("h_minus_one: tau must be nonnegative");
    const double p = P.p();
    const double ps = P.p_star();
    double L = 0.0;
    if (tau <= 1.0) {
        L = std::log1p(std::pow(tau, p)) - (p / ps) * std::log1p(std::pow(tau, P.beta()) + std::pow(tau, ps));
    } else {
        // Divide numerator by tau^p and the bracket by tau^p*.
        L = std::log1p(std::pow(tau, -p)) - (p / ps) * std::log1p(std::pow(tau, -P.alpha()) + std::pow(tau, -ps));
    }
    return std::expm1(L);
}

double g_eval(double tau, const ParamSet& P) { return g_eta_eval(tau, 1.0, P); }

double g_magnitude(double tau, const ParamSet& P) {
    const double ps = P.p_star();
    const double b = P.beta();
    return ps + P.alpha() * std::pow(tau, b) + b * std::pow(tau, b - P.p()) + ps * std::pow(tau, ps - P.p());
}

double g_eta_eval(double tau, double eta, const ParamSet& P) {
    const double ps = P.p_star();
    const double a = P.alpha();
    const double b = P.beta();
    const double p = P.p();
    return eta * ps + a * std::pow(tau, b) - b * std::pow(tau, b - p) - ps * std::pow(tau, ps - p);
}

double g_prime(double tau, const ParamSet& P) {
    const double ps = P.p_star();
    const double a = P.alpha();
    const double b = P.beta();
    const double p = P.p();
    return a * b * std::pow(tau, b - 1.0) - b * (b - p) * std::pow(tau, b - p - 1.0) -
           ps * (ps - p) * std::pow(tau, ps - p - 1.0);
}

double f_factor(double tau, const ParamSet& P) {
    const double ps = P.p_star();
    const double p = P.p();
    const double den = 1.0 + std::pow(tau, P.beta()) + std::pow(tau, ps);
    return p * std::pow(tau, p - 1.0) / (ps * std::pow(den, p / ps + 1.0));
}

double h_prime(double tau, const ParamSet& P) { return f_factor(tau, P) * g_eval(tau, P); }

double f_eta_eval(double tau, double eta, const ParamSet& P) {
    const double num = 1.0 + std::pow(tau, P.p());
    const double den = eta + std::pow(tau, P.beta()) + std::pow(tau, P.p_star());
    return num / std::pow(den, P.p() / P.p_star());
}

double default_tau_max(const ParamSet& P, double eta) {
    const double ps = P.p_star();
    const double p = P.p();
    // (coefficient, exponent) of each power in g_eta; equal exponents are merged.
    std::vector<std::array<double, 2>> terms{{eta * ps, 0.0}, {P.alpha(), P.beta()}, {-P.beta(), P.beta() - p}};
    const double top = ps - p;
    bool merged = false;
    for (auto& t : terms) {
        if (exponent_equal(t[1], top)) {
            t[0] -= ps;
            merged = true;
        }
    }
    if (!merged) terms.push_back({-ps, top});
    const auto dom = std::max_element(terms.begin(), terms.end(),
                                      [](const auto& x, const auto& y) { return x[1] < y[1]; });
    const double cap = std::pow(10.0, 250.0 / ps);
    for (double tau = 1e4; tau < cap; tau *= 10.0) {
        double rest = 0.0;
        for (auto it = terms.begin(); it != terms.end(); ++it) {
            if (it != dom) rest += std::abs((*it)[0]) * std::pow(tau, (*it)[1]);
        }
        if (std::abs((*dom)[0]) * std::pow(tau, (*dom)[1]) > 10.0 * rest) return tau;
    }
    return cap;
}

RootScan find_g_roots(const ParamSet& P) { return find_g_roots(P, default_tau_max(P), 4000); }

RootScan find_g_roots(const ParamSet& P, double tau_max, int grid_n, double eta) {
    if (!(tau_max > kGridStart)) throw std::invalid_argument("find_g_roots: tau_max must exceed 1e-8");
    if (grid_n < 100) throw std::invalid_argument("find_g_roots: grid_n must be at least 100");
    if (!(eta > 0.0)) throw std::invalid_argument("find_g_roots: eta must be positive");

    const auto g = [&](double t) { return g_eta_eval(t, eta, P); };
    const auto dg = [&](double t) { return g_prime(t, P); };
    const auto grid = roots::log_space(kGridStart, tau_max, grid_n);

    RootScan out;
    std::vector<std::pair<double, double>> brackets;

    const int s_left = left_boundary_sign(P, eta);
    const int s_first = roots::sign_of(g(grid.front()));
    if (s_first != 0 && s_left != 0 && s_first != s_left) {
        // A root sits below the grid; walk down until the boundary sign reappears.
        double hi = grid.front();
        bool found = false;
        for (double t = hi * 1e-4; t >= kSmallestTau; t *= 1e-4) {
            if (roots::sign_of(g(t)) == s_left) {
                brackets.emplace_back(t, hi);
                found = true;
                break;
            }
            hi = t;
        }
        if (!found) out.warning = "a root of g lies below 1e-300 and was not resolved";
    }

    int last_sign = s_first;
    std::size_t last_idx = 0;
    std::optional<std::size_t> zero_at;
    if (s_first == 0) zero_at = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const int s = roots::sign_of(g(grid[i]));
        if (s == 0) {
            zero_at = i;
            continue;
        }
        if (last_sign != 0 && s != last_sign) {
            if (zero_at) {
                out.roots.push_back(grid[*zero_at]);
            } else {
                brackets.emplace_back(grid[last_idx], grid[i]);
            }
        } else if (last_sign == 0 && zero_at && s != s_left) {
            out.roots.push_back(grid[*zero_at]);
        }
        zero_at.reset();
        last_sign = s;
        last_idx = i;
    }

    for (const auto& [lo, hi] : brackets) {
        const double x0 = roots::bisect(g, lo, hi, 1e-15);
        out.roots.push_back(roots::newton_polish(g, dg, x0, lo, hi, 50).x);
    }
    std::sort(out.roots.begin(), out.roots.end());

    if (eta == 1.0) {
        const int found = static_cast<int>(out.roots.size());
        if (!root_count_consistent(P, found)) {
            std::ostringstream os;
            os << "case " << to_string(sign_case(P)) << " is inconsistent with " << found << " root(s) of g";
            out.warning = out.warning ? *out.warning + "; " + os.str() : os.str();
        }
    }
    return out;
}

TauClassification classify(const ParamSet& P) { return classify(P, default_tau_max(P), 4000); }

TauClassification classify(const ParamSet& P, double tau_max, int grid_n) {
    RootScan scan = find_g_roots(P, tau_max, grid_n);
    TauClassification c{sign_case(P), scan.roots, 0.0, 1.0, 0.0, 1.0, 0.0, {}};
    if (scan.warning) c.warnings.push_back(*scan.warning);

    double best_tau = 0.0;
    double best = 0.0;  // h(0) - 1
    for (double r : scan.roots) {
        const double hr = h_minus_one(r, P);
        const bool tie = std::abs(hr - best) <= 1e-12 * std::max(std::abs(hr), std::abs(best));
        if ((hr < best && !tie) || (tie && r > best_tau)) {
            best_tau = r;
            best = hr;
        }
    }
    c.tau_min = best_tau;
    c.h_at_tau_min = h_eval(best_tau, P);
    c.h_minus_one_at_tau_min = best;

    const double ps = P.p_star();
    c.lambda = std::pow(ps / (ps + P.alpha() * std::pow(best_tau, P.beta())), 1.0 / (ps - P.p()));
    c.mu = best_tau * c.lambda;

    if ((best_tau > 0.0) != has_positive_tau_min(c.case_label)) {
        std::ostringstream os;
        os << "case " << to_string(c.case_label) << ": sampled minimum of h disagrees with the case table (tau_min = "
           << best_tau << ")";
        c.warnings.push_back(os.str());
    }
    return c;
}

std::vector<std::string> SyncResiduals::failing(double tol) const {
    std::vector<std::string> out;
    if (!(first < tol)) out.emplace_back("lambda relation");
    if (!(second < tol)) out.emplace_back("mu relation");
    return out;
}

SyncResiduals sync_residuals(double lambda, double mu, const ParamSet& P) {
    const double ps = P.p_star();
    const double p = P.p();
    const double a = P.alpha();
    const double b = P.beta();
    const double r1 = std::pow(lambda, ps - p) + (a / ps) * std::pow(mu, b) * std::pow(lambda, a - p) - 1.0;
    const double r2 = std::pow(mu, ps - p) + (b / ps) * std::pow(mu, b - p) * std::pow(lambda, a) - 1.0;
    return {std::abs(r1), std::abs(r2)};
}

SyncResiduals verify_sync_relations(const TauClassification& c, const ParamSet& P) {
    if (!(c.tau_min > 0.0)) throw DomainError("verify_sync_relations: requires tau_min > 0");
    return sync_residuals(c.lambda, c.mu, P);
}

double s_alpha_beta_from_scalar(double S, const TauClassification& c) {
    if (!(S > 0.0)) throw DomainError("s_alpha_beta_from_scalar: S must be positive");
    return c.h_at_tau_min * S;
}

}  // namespace critcouple::coupling
