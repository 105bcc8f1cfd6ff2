#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "critcouple/exponents.hpp"

namespace critcouple::algebraic {

/// The coupled algebraic system for coupling strength gamma > 0.
class GammaSystem {
public:
    GammaSystem(ParamSet params, double gamma);
    const ParamSet& params() const noexcept { return params_; }
    double gamma() const noexcept { return gamma_; }

private:
    ParamSet params_;
    double gamma_;
};

/// Raised when solve_all finds no sign change or continuation cannot proceed.
class SolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

// F1 = k^((p*-p)/p) + (alpha gamma/p*) k^((alpha-p)/p) l^(beta/p) - 1, k > 0, l >= 0.
// F2 is the mirror image (alpha <-> beta, k <-> l). The raw-gamma overloads accept
// gamma = 0, which continuation needs at its starting point.
double F1(double k, double l, const GammaSystem& sys);
double F2(double k, double l, const GammaSystem& sys);
double F1(double k, double l, const ParamSet& params, double gamma);
double F2(double k, double l, const ParamSet& params, double gamma);

/// The curve F1(k, l(k)) = 0 for k in (0, 1].
double ell_of_k(double k, const GammaSystem& sys);
/// The curve F2(k(l), l) = 0 for l in (0, 1].
double k_of_ell(double l, const GammaSystem& sys);

/// Analytic derivative of ell_of_k.
double ell_prime(double k, const GammaSystem& sys);

/// Upper bound on gamma in Window_i. Throws RegimeError elsewhere.
double gamma_upper_threshold(const ParamSet& params);
/// Lower bound on gamma in Window_ii. Throws RegimeError elsewhere.
double gamma_lower_threshold(const ParamSet& params);

struct AlgebraicSolution {
    double k;
    double l;
    double residual_F1;
    double residual_F2;
    bool is_k0;
    bool is_l1;
    bool in_unit_square;  ///< false would mean the root lies outside (0,1]^2
};

struct SolveOptions {
    int scan_n = 100000;    ///< uniform points on (0,1)
    int end_refine_n = 2000; ///< extra log-spaced points toward k = 0 and k = 1 on each scan
};

/// Every root of (F1, F2) = 0, found by scanning k -> F2(k, l(k)) and l -> F1(k(l), l)
/// for sign changes, bisecting and finishing with a 2-D Newton polish. Results are
/// sorted by k. Throws SolveError if nothing is found.
std::vector<AlgebraicSolution> solve_all(const GammaSystem& sys, const SolveOptions& opts = {});

/// The solution flagged is_k0.
const AlgebraicSolution& k0_solution(const std::vector<AlgebraicSolution>& sols);

/// (s/N)(k0 + l0) S^(N/(sp)).
double least_energy(double k0, double l0, double S, const ParamSet& params);

/// Partial derivatives [[dF1/dk, dF1/dl], [dF2/dk, dF2/dl]].
Matrix2 jacobian(double k, double l, const GammaSystem& sys);
Matrix2 jacobian(double k, double l, const ParamSet& params, double gamma);

struct BranchPoint {
    double gamma;
    double k;
    double l;
    double residual;  ///< max(|F1|, |F2|)
};

struct BranchResult {
    std::vector<BranchPoint> points;
    /// Largest grid gamma up to which k + l > 1 holds along the branch, if any.
    std::optional<double> gamma1;
    bool failed = false;
    std::string failure;
    double last_good_gamma = 0.0;
};

/// Predictor-corrector continuation of the root through (1, 1) at gamma = 0.
/// Requires Window_ii and a strictly increasing positive gamma grid.
BranchResult continue_branch(const ParamSet& params, const std::vector<double>& gamma_grid);

struct MinimalityProfiles {
    double f1;
    double f2;
    double g1;
    double g2;
};

/// The profile functions obtained from c + d = y, c/d = x (Window_i only).
MinimalityProfiles minimality_profiles(double x, const GammaSystem& sys);
/// Critical point of g1.
double profile_x1(const GammaSystem& sys);
/// Critical point of g2: (alpha - p)/(beta - p).
double profile_x2(const ParamSet& params);

}  // namespace critcouple::algebraic
