#include "critcouple/gagliardo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "critcouple/parallel.hpp"

namespace critcouple::gagliardo {

// ---------------------------------------------------------------------------
// Grid and functions

Grid1D::Grid1D(double half_width, int n, bool exterior_tails)
    : L_(half_width), n_(n), delta_(0.0), tails_(exterior_tails) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw std::invalid_argument("Grid1D: half_width must be positive and finite");
    if (n < 16) throw std::invalid_argument("Grid1D: need at least 16 cells");
    delta_ = 2.0 * L_ / n;
    free_.assign(static_cast<std::size_t>(n), 1);
}

Grid1D Grid1D::with_ball_mask(double radius) const {
    if (!(radius >= delta_)) {
        std::ostringstream os;
        os << "mask radius " << radius << " is smaller than the cell width " << delta_;
        throw ValidationError({os.str()});
    }
    Grid1D g = *this;
    g.radius_ = radius;
    for (int i = 0; i < n_; ++i) g.free_[static_cast<std::size_t>(i)] = std::abs(x(i)) < radius ? 1 : 0;
    return g;
}

int Grid1D::free_count() const noexcept { return static_cast<int>(std::count(free_.begin(), free_.end(), 1)); }

DiscreteFunction::DiscreteFunction(Grid1D grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.n())
        throw std::invalid_argument("DiscreteFunction: value count does not match the grid");
    for (int i = 0; i < grid_.n(); ++i) {
        auto& v = values_[static_cast<std::size_t>(i)];
        if (!std::isfinite(v)) throw std::invalid_argument("DiscreteFunction: non-finite sample");
        if (!grid_.is_free(i)) v = 0.0;
    }
}

DiscreteFunction DiscreteFunction::zeros(const Grid1D& grid) {
    return DiscreteFunction(grid, std::vector<double>(static_cast<std::size_t>(grid.n()), 0.0));
}

DiscreteFunction DiscreteFunction::sample(const Grid1D& grid, const std::function<double(double)>& f) {
    std::vector<double> v(static_cast<std::size_t>(grid.n()));
    for (int i = 0; i < grid.n(); ++i) v[static_cast<std::size_t>(i)] = f(grid.x(i));
    return DiscreteFunction(grid, std::move(v));
}

bool DiscreteFunction::is_zero() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

DiscreteFunction DiscreteFunction::scaled(double c) const {
    std::vector<double> v = values_;
    for (auto& x : v) x *= c;
    return DiscreteFunction(grid_, std::move(v));
}

// ---------------------------------------------------------------------------
// Lattice operator

namespace {

using Vec = std::vector<double>;

void require_lattice_params(const ParamSet& P) {
    if (P.N() != 1) throw DomainError("discrete Gagliardo layer supports N = 1 only");
}

void require_same_grid(const DiscreteFunction& u, const DiscreteFunction& v) {
    if (!(u.grid() == v.grid())) throw std::invalid_argument("components live on different grids");
}

double phi(double t, double r) {
    if (t == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(t), r - 1.0), t);
}

double sq_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

/// Precomputed kernel and tail weights for one grid and one (s, p).
class Lattice {
public:
    Lattice(const Grid1D& grid, const ParamSet& P) : grid_(grid), p_(P.p()) {
        require_lattice_params(P);
        const int n = grid.n();
        const double d = grid.delta();
        const double sp = P.s() * P.p();
        kernel_.assign(static_cast<std::size_t>(n), 0.0);
        for (int k = 1; k < n; ++k) kernel_[static_cast<std::size_t>(k)] = std::pow(k * d, -1.0 - sp);
        tail_.assign(static_cast<std::size_t>(n), 0.0);
        if (grid.exterior_tails()) {
            const double L = grid.half_width();
            for (int i = 0; i < n; ++i) {
                const double x = grid.x(i);
                tail_[static_cast<std::size_t>(i)] = (std::pow(L - x, -sp) + std::pow(L + x, -sp)) / sp;
            }
        }
    }

    const Grid1D& grid() const { return grid_; }
    double tail(int i) const { return tail_[static_cast<std::size_t>(i)]; }

    /// Energy only.
    double energy(const Vec& u) const {
        const int n = grid_.n();
        const double d = grid_.delta();
        const double pairs = parallel::reduce_rows(static_cast<std::size_t>(n), [&](std::size_t ii) {
            const int i = static_cast<int>(ii);
            const double ui = u[ii];
            double acc = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double a = std::abs(ui - u[static_cast<std::size_t>(j)]);
                if (a > 0.0) acc += std::pow(a, p_) * kernel_[static_cast<std::size_t>(std::abs(i - j))];
            }
            return acc;
        });
        double tails = 0.0;
        for (int i = 0; i < n; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            if (ui != 0.0) tails += std::pow(std::abs(ui), p_) * tail_[static_cast<std::size_t>(i)];
        }
        return d * d * pairs + 2.0 * d * tails;
    }

    /// Energy and operator in one sweep; Au is zero on pinned cells.
    double energy_and_apply(const Vec& u, Vec& Au) const {
        const int n = grid_.n();
        const double d = grid_.delta();
        Au.assign(static_cast<std::size_t>(n), 0.0);
        Vec rowE(static_cast<std::size_t>(n), 0.0);
        parallel::for_rows(static_cast<std::size_t>(n), [&](std::size_t ii) {
            const int i = static_cast<int>(ii);
            const double ui = u[ii];
            double e = 0.0;
            double a = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double t = ui - u[static_cast<std::size_t>(j)];
                const double at = std::abs(t);
                if (at == 0.0) continue;
                const double k = kernel_[static_cast<std::size_t>(std::abs(i - j))];
                const double pm1 = std::pow(at, p_ - 1.0);
                e += at * pm1 * k;
                a += std::copysign(pm1, t) * k;
            }
            rowE[ii] = e;
            if (grid_.is_free(i)) Au[ii] = 2.0 * d * a + 2.0 * phi(ui, p_) * tail_[ii];
        });
        const double pairs = parallel::reduce_rows(static_cast<std::size_t>(n), [&](std::size_t i) { return rowE[i]; });
        double tails = 0.0;
        for (int i = 0; i < n; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            if (ui != 0.0) tails += std::pow(std::abs(ui), p_) * tail_[static_cast<std::size_t>(i)];
        }
        return d * d * pairs + 2.0 * d * tails;
    }

private:
    Grid1D grid_;
    double p_;
    Vec kernel_;
    Vec tail_;
};

/// Exponents of the (possibly shifted) coupled nonlinearity.
struct Powers {
    double q;
    double a;
    double b;
    double gamma;
};

Powers powers(const ParamSet& P, double gamma, double eps) {
    if (!(eps >= 0.0) || !(eps < std::min(P.alpha(), P.beta()) - 1.0))
        throw DomainError("eps_shift must lie in [0, min(alpha, beta) - 1)");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be finite and nonnegative");
    return {P.p_star() - 2.0 * eps, P.alpha() - eps, P.beta() - eps, gamma};
}

double abs_pow(double x, double r) { return x == 0.0 ? 0.0 : std::pow(std::abs(x), r); }

/// delta sum (|u|^q + |v|^q + gamma |u|^a |v|^b).
double coupled_integral(const Vec& u, const Vec& v, const Powers& w, double delta) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += abs_pow(u[i], w.q) + abs_pow(v[i], w.q);
        if (w.gamma != 0.0) s += w.gamma * abs_pow(u[i], w.a) * abs_pow(v[i], w.b);
    }
    return delta * s;
}

/// Derivative of the integrand of coupled_integral / q with respect to u (first) and v (second).
void coupled_nonlinearity(const Vec& u, const Vec& v, const Powers& w, Vec& Gu, Vec& Gv) {
    const std::size_t n = u.size();
    Gu.assign(n, 0.0);
    Gv.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        Gu[i] = phi(u[i], w.q);
        Gv[i] = phi(v[i], w.q);
        if (w.gamma != 0.0) {
            Gu[i] += (w.a * w.gamma / w.q) * phi(u[i], w.a) * abs_pow(v[i], w.b);
            Gv[i] += (w.b * w.gamma / w.q) * phi(v[i], w.b) * abs_pow(u[i], w.a);
        }
    }
}

Vec values_of(const DiscreteFunction& f) { return Vec(f.values().begin(), f.values().end()); }

}  // namespace

double exterior_weight(const Grid1D& grid, int i, const ParamSet& params) {
    require_lattice_params(params);
    if (i < 0 || i >= grid.n()) throw std::out_of_range("exterior_weight: cell index");
    if (!grid.exterior_tails()) return 0.0;
    const double sp = params.s() * params.p();
    const double L = grid.half_width();
    const double x = grid.x(i);
    return (std::pow(L - x, -sp) + std::pow(L + x, -sp)) / sp;
}

double seminorm_p(const DiscreteFunction& u, const ParamSet& params) {
    return Lattice(u.grid(), params).energy(values_of(u));
}

DiscreteFunction frac_p_laplacian_apply(const DiscreteFunction& u, const ParamSet& params) {
    Vec Au;
    Lattice(u.grid(), params).energy_and_apply(values_of(u), Au);
    return DiscreteFunction(u.grid(), std::move(Au));
}

double lebesgue_integral(const DiscreteFunction& u, double r) {
    double s = 0.0;
    for (double x : u.values()) s += abs_pow(x, r);
    return u.grid().delta() * s;
}

double scalar_quotient(const DiscreteFunction& u, const ParamSet& params) {
    const double D = lebesgue_integral(u, params.p_star());
    if (!(D > 0.0)) throw DomainError("scalar_quotient: u is zero");
    return seminorm_p(u, params) / std::pow(D, params.p() / params.p_star());
}

double vector_quotient(const DiscreteFunction& u, const DiscreteFunction& v, double gamma, double eps_shift,
                       const ParamSet& params) {
    require_same_grid(u, v);
    const Powers w = powers(params, gamma, eps_shift);
    const double D = coupled_integral(values_of(u), values_of(v), w, u.grid().delta());
    if (!(D > 0.0)) throw DomainError("vector_quotient: denominator vanishes");
    return (seminorm_p(u, params) + seminorm_p(v, params)) / std::pow(D, params.p() / w.q);
}

// ---------------------------------------------------------------------------
// Optimiser

namespace {

/// A problem on the stacked unknown x = (u) or x = (u, v).
struct Problem {
    const Lattice& lat;
    Powers w;
    double p;
    int components;  // 1 or 2
    bool symmetrize;

    int n() const { return lat.grid().n(); }

    void split(const Vec& x, Vec& u, Vec& v) const {
        const auto m = static_cast<std::ptrdiff_t>(n());
        u.assign(x.begin(), x.begin() + m);
        if (components == 2) {
            v.assign(x.begin() + m, x.end());
        } else {
            v.assign(static_cast<std::size_t>(m), 0.0);
        }
    }

    double denominator(const Vec& x) const {
        Vec u, v;
        split(x, u, v);
        return coupled_integral(u, v, w, lat.grid().delta());
    }

    double value(const Vec& x) const {
        Vec u, v;
        split(x, u, v);
        double E = lat.energy(u);
        if (components == 2) E += lat.energy(v);
        return E / std::pow(coupled_integral(u, v, w, lat.grid().delta()), p / w.q);
    }

    /// Quotient and its gradient (zero on pinned cells).
    double value_and_grad(const Vec& x, Vec& g) const {
        Vec u, v, Au, Av, Gu, Gv;
        split(x, u, v);
        double E = lat.energy_and_apply(u, Au);
        if (components == 2) {
            E += lat.energy_and_apply(v, Av);
        } else {
            Av.assign(u.size(), 0.0);
        }
        const double d = lat.grid().delta();
        const double D = coupled_integral(u, v, w, d);
        coupled_nonlinearity(u, v, w, Gu, Gv);
        const double scale = p * d / std::pow(D, p / w.q);
        const double ratio = E / D;
        g.assign(x.size(), 0.0);
        for (int i = 0; i < n(); ++i) {
            if (!lat.grid().is_free(i)) continue;
            const auto k = static_cast<std::size_t>(i);
            g[k] = scale * (Au[k] - ratio * Gu[k]);
            if (components == 2) g[k + static_cast<std::size_t>(n())] = scale * (Av[k] - ratio * Gv[k]);
        }
        return E / std::pow(D, p / w.q);
    }

    void symmetrize_block(Vec& x, std::size_t off) const {
        // Average mirror pairs, then sort the pair values (and an odd middle cell)
        // so that they do not decrease toward the centre. Pair 0 is outermost.
        const int m = n();
        std::vector<int> slots;
        std::vector<double> vals;
        for (int i = 0; i < m / 2; ++i) {
            if (!lat.grid().is_free(i)) continue;
            slots.push_back(i);
            vals.push_back(0.5 * (x[off + static_cast<std::size_t>(i)] + x[off + static_cast<std::size_t>(m - 1 - i)]));
        }
        const bool odd_mid = (m % 2 == 1) && lat.grid().is_free(m / 2);
        if (odd_mid) {
            slots.push_back(m / 2);
            vals.push_back(x[off + static_cast<std::size_t>(m / 2)]);
        }
        std::sort(vals.begin(), vals.end());
        for (std::size_t k = 0; k < slots.size(); ++k) {
            const int i = slots[k];
            x[off + static_cast<std::size_t>(i)] = vals[k];
            x[off + static_cast<std::size_t>(m - 1 - i)] = vals[k];
        }
    }

    /// Nonnegative, pinned cells zero, optional rearrangement, unit denominator.
    /// Returns false if the projected point is zero.
    bool project(Vec& x) const {
        for (int c = 0; c < components; ++c) {
            const std::size_t off = static_cast<std::size_t>(c * n());
            for (int i = 0; i < n(); ++i) {
                auto& xi = x[off + static_cast<std::size_t>(i)];
                xi = lat.grid().is_free(i) ? std::abs(xi) : 0.0;
            }
            if (symmetrize) symmetrize_block(x, off);
        }
        const double D = denominator(x);
        if (!(D > 0.0) || !std::isfinite(D)) return false;
        const double c = std::pow(D, -1.0 / w.q);
        for (auto& xi : x) xi *= c;
        return true;
    }
};

struct RunOutcome {
    Vec x;
    double value;
    int iterations;
    double grad_norm;
    bool converged;
    std::string message;
    std::vector<double> history;
};

RunOutcome descend(const Problem& prob, Vec x, const OptimizerOptions& opts) {
    if (!(opts.tol > 0.0) || opts.max_iter < 0 || !(opts.backtrack > 0.0 && opts.backtrack < 1.0) ||
        !(opts.armijo > 0.0 && opts.armijo < 1.0) || !(opts.initial_step > 0.0))
        throw std::invalid_argument("invalid optimizer options");
    if (!prob.project(x)) throw DomainError("initial guess is zero on the free cells");

    RunOutcome out{};
    Vec g;
    double Q = prob.value_and_grad(x, g);
    if (opts.record_history) out.history.push_back(Q);
    double t = opts.initial_step;
    constexpr double kMinStep = 1e-18;
    out.message = "maximum iterations reached";

    int it = 0;
    for (; it < opts.max_iter; ++it) {
        const double gn = std::sqrt(sq_norm(g));
        const double xn = std::sqrt(sq_norm(x));
        if (gn == 0.0) {
            out.converged = true;
            out.message = "gradient vanished";
            break;
        }
        bool accepted = false;
        Vec y;
        double Qy = Q;
        while (t >= kMinStep) {
            y = x;
            for (std::size_t k = 0; k < y.size(); ++k) y[k] -= t * xn * g[k] / gn;
            if (prob.project(y)) {
                Qy = prob.value(y);
                if (Qy <= Q - opts.armijo * t * gn * xn) {
                    accepted = true;
                    break;
                }
            }
            t *= opts.backtrack;
        }
        if (!accepted) {
            out.converged = true;
            out.message = "no sufficient decrease above the step floor";
            break;
        }
        const double rel = (Q - Qy) / Q;
        x = std::move(y);
        Q = prob.value_and_grad(x, g);
        if (opts.record_history) out.history.push_back(Q);
        if (rel < opts.tol) {
            out.converged = true;
            out.message = "relative decrease below tolerance";
            ++it;
            break;
        }
        t = std::min(opts.initial_step, 2.0 * t);
    }
    out.iterations = it;
    out.value = Q;
    out.grad_norm = std::sqrt(sq_norm(g)) * std::sqrt(sq_norm(x)) / Q;
    out.x = std::move(x);
    return out;
}

}  // namespace

RayleighResult minimize_scalar(const DiscreteFunction& init, const ParamSet& params, const OptimizerOptions& opts) {
    if (init.is_zero()) throw DomainError("minimize_scalar: zero initial guess");
    const Lattice lat(init.grid(), params);
    const Problem prob{lat, powers(params, 0.0, 0.0), params.p(), 1, opts.symmetrize};
    RunOutcome run = descend(prob, values_of(init), opts);
    DiscreteFunction u(init.grid(), std::move(run.x));
    const DiscreteFunction zero = DiscreteFunction::zeros(init.grid());
    const double res = el_residual_system(normalize_to_solution(u, params), zero, 0.0, params);
    return RayleighResult{.value = run.value,
                          .minimizer = std::move(u),
                          .minimizer_v = std::nullopt,
                          .iterations = run.iterations,
                          .grad_norm = run.grad_norm,
                          .el_residual = res,
                          .converged = run.converged,
                          .message = run.message,
                          .history = std::move(run.history)};
}

RayleighResult minimize_vector(const DiscreteFunction& init_u, const DiscreteFunction& init_v, double gamma,
                               double eps_shift, const ParamSet& params, const OptimizerOptions& opts) {
    require_same_grid(init_u, init_v);
    if (init_u.is_zero() && init_v.is_zero()) throw DomainError("minimize_vector: zero initial pair");
    const Lattice lat(init_u.grid(), params);
    const Powers w = powers(params, gamma, eps_shift);
    const Problem prob{lat, w, params.p(), 2, opts.symmetrize};
    Vec x = values_of(init_u);
    const Vec v0 = values_of(init_v);
    x.insert(x.end(), v0.begin(), v0.end());
    RunOutcome run = descend(prob, std::move(x), opts);
    const auto m = static_cast<std::ptrdiff_t>(init_u.grid().n());
    DiscreteFunction u(init_u.grid(), Vec(run.x.begin(), run.x.begin() + m));
    DiscreteFunction v(init_u.grid(), Vec(run.x.begin() + m, run.x.end()));
    const ScaledPair sol = normalize_pair_to_solution(u, v, gamma, params, eps_shift);
    const double res = el_residual_system(sol.u, sol.v, gamma, params, eps_shift);
    return RayleighResult{.value = run.value,
                          .minimizer = std::move(u),
                          .minimizer_v = std::move(v),
                          .iterations = run.iterations,
                          .grad_norm = run.grad_norm,
                          .el_residual = res,
                          .converged = run.converged,
                          .message = run.message,
                          .history = std::move(run.history)};
}

// ---------------------------------------------------------------------------
// Residuals, normalisation, energies

namespace {

struct PairFields {
    Vec Au, Av, Gu, Gv;
    double Eu = 0.0;
    double Ev = 0.0;
};

PairFields pair_fields(const DiscreteFunction& u, const DiscreteFunction& v, const Powers& w,
                       const ParamSet& params) {
    require_same_grid(u, v);
    const Lattice lat(u.grid(), params);
    PairFields f;
    const Vec uu = values_of(u);
    const Vec vv = values_of(v);
    f.Eu = lat.energy_and_apply(uu, f.Au);
    f.Ev = lat.energy_and_apply(vv, f.Av);
    coupled_nonlinearity(uu, vv, w, f.Gu, f.Gv);
    for (int i = 0; i < u.grid().n(); ++i) {
        if (!u.grid().is_free(i)) {
            f.Gu[static_cast<std::size_t>(i)] = 0.0;
            f.Gv[static_cast<std::size_t>(i)] = 0.0;
        }
    }
    return f;
}

double pair_multiplier(const PairFields& f) {
    const double num = std::inner_product(f.Au.begin(), f.Au.end(), f.Gu.begin(), 0.0) +
                       std::inner_product(f.Av.begin(), f.Av.end(), f.Gv.begin(), 0.0);
    const double den = sq_norm(f.Gu) + sq_norm(f.Gv);
    if (!(den > 0.0)) throw DomainError("fitted multiplier: nonlinearity vanishes");
    return num / den;
}

}  // namespace

double el_residual_system(const DiscreteFunction& u, const DiscreteFunction& v, double gamma, const ParamSet& params,
                          double eps_shift) {
    if (u.is_zero() && v.is_zero()) throw DomainError("el_residual_system: zero pair");
    const PairFields f = pair_fields(u, v, powers(params, gamma, eps_shift), params);
    double r = 0.0;
    for (std::size_t i = 0; i < f.Au.size(); ++i) {
        r += (f.Au[i] - f.Gu[i]) * (f.Au[i] - f.Gu[i]);
        r += (f.Av[i] - f.Gv[i]) * (f.Av[i] - f.Gv[i]);
    }
    const double a = sq_norm(f.Au) + sq_norm(f.Av);
    if (!(a > 0.0)) throw DomainError("el_residual_system: operator vanishes");
    return std::sqrt(r / a);
}

double fitted_multiplier(const DiscreteFunction& u, const ParamSet& params) {
    if (u.is_zero()) throw DomainError("fitted_multiplier: zero function");
    return pair_multiplier(pair_fields(u, DiscreteFunction::zeros(u.grid()), powers(params, 0.0, 0.0), params));
}

DiscreteFunction normalize_to_solution(const DiscreteFunction& u, const ParamSet& params) {
    const double lam = fitted_multiplier(u, params);
    if (!(lam > 0.0) || !std::isfinite(lam)) {
        std::ostringstream os;
        os << "normalize_to_solution: fitted multiplier " << lam << " is not positive";
        throw DomainError(os.str());
    }
    return u.scaled(std::pow(lam, 1.0 / (params.p_star() - params.p())));
}

ScaledPair normalize_pair_to_solution(const DiscreteFunction& u, const DiscreteFunction& v, double gamma,
                                      const ParamSet& params, double eps_shift) {
    if (u.is_zero() && v.is_zero()) throw DomainError("normalize_pair_to_solution: zero pair");
    const Powers w = powers(params, gamma, eps_shift);
    const double lam = pair_multiplier(pair_fields(u, v, w, params));
    if (!(lam > 0.0) || !std::isfinite(lam)) throw DomainError("normalize_pair_to_solution: multiplier not positive");
    const double t = std::pow(lam, 1.0 / (w.q - params.p()));
    return {t, u.scaled(t), v.scaled(t)};
}

double j_energy(const DiscreteFunction& u, const DiscreteFunction& v, double gamma, double eps_shift,
                const ParamSet& params) {
    require_same_grid(u, v);
    const Powers w = powers(params, gamma, eps_shift);
    const double E = seminorm_p(u, params) + seminorm_p(v, params);
    const double D = coupled_integral(values_of(u), values_of(v), w, u.grid().delta());
    return E / params.p() - D / w.q;
}

ScaledPair nehari_project(const DiscreteFunction& u, const DiscreteFunction& v, double gamma, const ParamSet& params,
                          double eps_shift) {
    require_same_grid(u, v);
    const Powers w = powers(params, gamma, eps_shift);
    const double D = coupled_integral(values_of(u), values_of(v), w, u.grid().delta());
    if (!(D > 0.0)) throw DomainError("nehari_project: denominator integral vanishes");
    const double E = seminorm_p(u, params) + seminorm_p(v, params);
    const double t = std::pow(E / D, 1.0 / (w.q - params.p()));
    return {t, u.scaled(t), v.scaled(t)};
}

DiscreteFunction default_init(const Grid1D& grid, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("default_init: width must be positive");
    return DiscreteFunction::sample(grid, [width](double x) { return 1.0 / (1.0 + (x / width) * (x / width)); });
}

DiscreteFunction random_function(const Grid1D& grid, std::uint64_t seed, double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("random_function: empty range");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(static_cast<std::size_t>(grid.n()), 0.0);
    for (int i = 0; i < grid.n(); ++i) {
        const double r = dist(rng);
        if (grid.is_free(i)) v[static_cast<std::size_t>(i)] = r;
    }
    return DiscreteFunction(grid, std::move(v));
}

}  // namespace critcouple::gagliardo
