#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "critcouple/exponents.hpp"

namespace critcouple::coupling {

/// The seven sign configurations of (beta - p, alpha - p) that organise the analysis of g.
enum class SignCase {
    C1,    ///< beta < p
    C2i,   ///< beta = p, alpha = p   (N = 2sp)
    C2ii,  ///< beta = p, alpha < p
    C2iii, ///< beta = p, alpha > p
    C3i,   ///< beta > p, alpha > p
    C3ii,  ///< beta > p, alpha < p
    C3iii, ///< beta > p, alpha = p
};

SignCase sign_case(const ParamSet& params);
std::string_view to_string(SignCase c);

/// Cases in which h dips below 1 at a positive tau.
bool has_positive_tau_min(SignCase c);

/// Smallest possible number of positive roots of g in each case: one in cases
/// 2i, 2iii, 3i, 3iii, two in 2ii and 3ii. In case 1 only the ends of g are
/// fixed (g -> -inf at 0; at infinity +inf when alpha < p, -inf when alpha >= p
/// with g(1) = alpha - beta > 0), so the minimum is 1 or 2 respectively.
int expected_root_count(const ParamSet& params);

/// Whether a root count is possible for the case: exact in cases 2 and 3; in
/// case 1 any count of the right parity at or above expected_root_count.
bool root_count_consistent(const ParamSet& params, int count);

// h(tau) = (1 + tau^p) / (1 + tau^beta + tau^p*)^(p/p*)
double h_eval(double tau, const ParamSet& params);

/// h(tau) - 1 without cancellation: log1p forms on each side of tau = 1 keep the
/// sign and leading digits even when |h - 1| is far below the spacing of doubles near 1.
double h_minus_one(double tau, const ParamSet& params);

// g(tau) = p* + alpha tau^beta - beta tau^(beta-p) - p* tau^(p*-p)
double g_eval(double tau, const ParamSet& params);

/// Sum of the absolute values of the four terms of g: the scale against which
/// a computed root's residual |g| is judged.
double g_magnitude(double tau, const ParamSet& params);

/// g'(tau); also the derivative of g_eta, which does not depend on eta.
double g_prime(double tau, const ParamSet& params);

/// Positive prefactor in h' = f g.
double f_factor(double tau, const ParamSet& params);

double h_prime(double tau, const ParamSet& params);

double g_eta_eval(double tau, double eta, const ParamSet& params);
double f_eta_eval(double tau, double eta, const ParamSet& params);

/// Smallest tau (>= 1e4, stepping by decades) past which one power of g dominates
/// the rest tenfold, so the sign of g is settled for all larger tau.
double default_tau_max(const ParamSet& params, double eta = 1.0);

struct RootScan {
    std::vector<double> roots;  ///< sorted, positive
    std::optional<std::string> warning;
};

/// All sign changes of g_eta on (0, tau_max]: log-uniform grid on [1e-8, tau_max],
/// the tau -> 0 limit enters as a boundary sign, each bracket is bisected and then
/// Newton-polished. With eta = 1 the root count is checked against the case table.
RootScan find_g_roots(const ParamSet& params, double tau_max, int grid_n, double eta = 1.0);
RootScan find_g_roots(const ParamSet& params);

struct TauClassification {
    SignCase case_label;
    std::vector<double> g_roots;
    double tau_min;
    double h_at_tau_min;
    double h_minus_one_at_tau_min;  ///< h(tau_min) - 1 from h_minus_one; negative iff h dips below 1
    double lambda;
    double mu;
    std::vector<std::string> warnings;
};

/// tau_min is the minimiser of h over {0} and the roots of g, compared through
/// h_minus_one; values equal to a relative 1e-12 count as ties and go to the
/// largest candidate. lambda^(p*-p) = p*/(p* + alpha tau_min^beta), mu = tau_min lambda.
TauClassification classify(const ParamSet& params);
TauClassification classify(const ParamSet& params, double tau_max, int grid_n);

struct SyncResiduals {
    double first;   ///< |lambda^(p*-p) + (alpha/p*) mu^beta lambda^(alpha-p) - 1|
    double second;  ///< |mu^(p*-p) + (beta/p*) mu^(beta-p) lambda^alpha - 1|

    bool ok(double tol = 1e-9) const { return first < tol && second < tol; }
    /// Names of the relations whose residual is at or above tol.
    std::vector<std::string> failing(double tol = 1e-9) const;
};

/// Throws DomainError when tau_min = 0 (no synchronized pair with mu > 0).
SyncResiduals verify_sync_relations(const TauClassification& c, const ParamSet& params);
SyncResiduals sync_residuals(double lambda, double mu, const ParamSet& params);

/// S_{alpha,beta} = h(tau_min) S.
double s_alpha_beta_from_scalar(double S, const TauClassification& c);

}  // namespace critcouple::coupling
