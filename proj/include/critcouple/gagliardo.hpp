#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "critcouple/exponents.hpp"

namespace critcouple::gagliardo {

/// Uniform lattice of n cells on [-L, L]; cell i is centred at -L + (i + 1/2) delta.
///
/// A cell is either free or pinned to zero. Pinning everything outside a ball
/// |x| < R gives the Dirichlet setting on B_R. When exterior tails are on, the
/// function is taken to vanish outside [-L, L] and the interaction with that
/// exterior enters through closed-form weights.
class Grid1D {
public:
    Grid1D(double half_width, int n, bool exterior_tails = true);

    /// Copy of this grid with every cell at |x| >= radius pinned. Throws
    /// std::invalid_argument when radius is below one cell width.
    Grid1D with_ball_mask(double radius) const;

    double half_width() const noexcept { return L_; }
    int n() const noexcept { return n_; }
    double delta() const noexcept { return delta_; }
    double x(int i) const noexcept { return -L_ + (i + 0.5) * delta_; }
    bool is_free(int i) const noexcept { return free_[static_cast<std::size_t>(i)] != 0; }
    bool exterior_tails() const noexcept { return tails_; }
    std::optional<double> mask_radius() const noexcept { return radius_; }
    int free_count() const noexcept;

    bool operator==(const Grid1D& other) const = default;

private:
    double L_;
    int n_;
    double delta_;
    bool tails_;
    std::optional<double> radius_;
    std::vector<std::uint8_t> free_;
};

/// Samples on a Grid1D. Pinned cells are forced to zero on construction;
/// non-finite samples are rejected.
class DiscreteFunction {
public:
    DiscreteFunction(Grid1D grid, std::vector<double> values);
    static DiscreteFunction zeros(const Grid1D& grid);
    static DiscreteFunction sample(const Grid1D& grid, const std::function<double(double)>& f);

    const Grid1D& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](int i) const noexcept { return values_[static_cast<std::size_t>(i)]; }
    bool is_zero() const noexcept;

    DiscreteFunction scaled(double c) const;

private:
    Grid1D grid_;
    std::vector<double> values_;
};

/// Discrete Gagliardo p-energy (N = 1):
///   delta^2 sum_{i != j} |u_i - u_j|^p / |x_i - x_j|^(1+sp)  +  2 delta sum_i |u_i|^p w_i,
/// where w_i is the exterior weight (zero when tails are off).
double seminorm_p(const DiscreteFunction& u, const ParamSet& params);

/// Gradient of seminorm_p / p divided by delta, i.e. the lattice fractional p-Laplacian.
DiscreteFunction frac_p_laplacian_apply(const DiscreteFunction& u, const ParamSet& params);

/// delta sum_i |u_i|^r over free cells.
double lebesgue_integral(const DiscreteFunction& u, double r);

/// Exterior weight int_{|y| > L} |x_i - y|^(-1-sp) dy.
double exterior_weight(const Grid1D& grid, int i, const ParamSet& params);

/// ||u||^p / (int |u|^p*)^(p/p*).
double scalar_quotient(const DiscreteFunction& u, const ParamSet& params);

/// (||u||^p + ||v||^p) / (int |u|^q + |v|^q + gamma |u|^(alpha-eps) |v|^(beta-eps))^(p/q), q = p* - 2 eps.
double vector_quotient(const DiscreteFunction& u, const DiscreteFunction& v, double gamma, double eps_shift,
                       const ParamSet& params);

struct OptimizerOptions {
    int max_iter = 20000;
    double tol = 1e-10;         ///< stop once the relative decrease of one step falls below this
    double armijo = 1e-4;       ///< sufficient-decrease constant
    double backtrack = 0.5;     ///< step shrink factor
    double initial_step = 1.0;  ///< relative to ||u||_2
    bool symmetrize = false;    ///< project onto symmetric nonincreasing profiles each step
    bool record_history = true;
};

struct RayleighResult {
    double value = 0.0;
    DiscreteFunction minimizer;
    std::optional<DiscreteFunction> minimizer_v;  ///< second component for vector runs
    int iterations = 0;
    double grad_norm = 0.0;    ///< ||grad Q||_2 ||u||_2 / Q at the last iterate
    double el_residual = 0.0;  ///< after rescaling to unit multiplier; reported, not asserted
    bool converged = false;
    std::string message;
    std::vector<double> history;  ///< quotient value per accepted iterate, starting with the projected init
};

/// Minimises the scalar quotient by normalised gradient descent with Armijo
/// backtracking, renormalising to unit discrete L^p* norm after every step.
/// Iterates are kept nonnegative; with opts.symmetrize also symmetric and
/// nonincreasing in |x|.
RayleighResult minimize_scalar(const DiscreteFunction& init, const ParamSet& params, const OptimizerOptions& opts = {});

/// Same scheme for the coupled quotient. A zero init_v stays zero, which reduces
/// to minimize_scalar.
RayleighResult minimize_vector(const DiscreteFunction& init_u, const DiscreteFunction& init_v, double gamma,
                               double eps_shift, const ParamSet& params, const OptimizerOptions& opts = {});

/// ||r|| / ||(A u, A v)|| over free cells, with
///   r_u = A u - |u|^(q-2) u - ((alpha-eps) gamma / q) |u|^(alpha-eps-2) u |v|^(beta-eps), r_v symmetric.
/// Pass v = 0, gamma = 0 for the scalar equation.
double el_residual_system(const DiscreteFunction& u, const DiscreteFunction& v, double gamma, const ParamSet& params,
                          double eps_shift = 0.0);

/// Least-squares multiplier Lambda of A u against |u|^(p*-2) u (free cells).
double fitted_multiplier(const DiscreteFunction& u, const ParamSet& params);

/// c u with c^(p*-p) = Lambda, so that the fitted multiplier becomes 1.
DiscreteFunction normalize_to_solution(const DiscreteFunction& u, const ParamSet& params);

struct ScaledPair {
    double t;
    DiscreteFunction u;
    DiscreteFunction v;
};

/// Pair version of normalize_to_solution for the coupled equations.
ScaledPair normalize_pair_to_solution(const DiscreteFunction& u, const DiscreteFunction& v, double gamma,
                                      const ParamSet& params, double eps_shift = 0.0);

/// (1/p)(||u||^p + ||v||^p) - (1/q) int(|u|^q + |v|^q + gamma |u|^(alpha-eps) |v|^(beta-eps)).
double j_energy(const DiscreteFunction& u, const DiscreteFunction& v, double gamma, double eps_shift,
                const ParamSet& params);

/// Single scaling t that puts (t u, t v) on the combined Nehari constraint.
ScaledPair nehari_project(const DiscreteFunction& u, const DiscreteFunction& v, double gamma, const ParamSet& params,
                          double eps_shift = 0.0);

/// Positive symmetric bump (1 + (x/w)^2)^(-1) used as the default initial guess.
DiscreteFunction default_init(const Grid1D& grid, double width = 1.0);

/// Uniform(0,1) samples on free cells from a fixed-seed generator.
DiscreteFunction random_function(const Grid1D& grid, std::uint64_t seed, double lo = 0.0, double hi = 1.0);

}  // namespace critcouple::gagliardo
