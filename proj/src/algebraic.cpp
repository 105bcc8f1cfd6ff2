#include "critcouple/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "critcouple/roots.hpp"

namespace critcouple::algebraic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double q_exp(const ParamSet& P) { return (P.p_star() - P.p()) / P.p(); }

// log of 1 - k^q, accurate for k close to 1; -inf at k = 1.
double log_one_minus_kq(double k, double q) {
    const double v = -std::expm1(q * std::log(k));
    return v > 0.0 ? std::log(v) : -kInf;
}

// log l(k) on the curve F1 = 0.
double log_ell_of_k(double k, const ParamSet& P, double gamma) {
    const double p = P.p();
    const double a = P.alpha();
    const double b = P.beta();
    const double ps = P.p_star();
    return (p / b) * (std::log(ps) - std::log(a * gamma)) + ((p - a) / b) * std::log(k) +
           (p / b) * log_one_minus_kq(k, q_exp(P));
}

// F2(k, l) from log k and log l; never produces NaN for finite logs.
double f2_from_logs(double log_k, double log_l, const ParamSet& P, double gamma) {
    const double p = P.p();
    const double a = P.alpha();
    const double b = P.beta();
    const double ps = P.p_star();
    if (log_l == -kInf) return kInf;
    const double t1 = std::exp(q_exp(P) * log_l);
    const double t2 = std::exp(std::log(b * gamma / ps) + ((b - p) / p) * log_l + (a / p) * log_k);
    return t1 + t2 - 1.0;
}

void check_first(double k, double l, double gamma) {
    if (!(k > 0.0) || !(l >= 0.0)) throw DomainError("F1: requires k > 0 and l >= 0");
    if (!(gamma >= 0.0)) throw DomainError("F1: requires gamma >= 0");
}

struct Newton2D {
    double k;
    double l;
    double residual;
};

Newton2D newton_2d(double k, double l, const ParamSet& P, double gamma, int max_iter = 60) {
    auto resid = [&](double kk, double ll) {
        return std::max(std::abs(F1(kk, ll, P, gamma)), std::abs(F2(kk, ll, P, gamma)));
    };
    double r = resid(k, l);
    for (int it = 0; it < max_iter && r > 0.0; ++it) {
        const Matrix2 J = jacobian(k, l, P, gamma);
        const double f1 = F1(k, l, P, gamma);
        const double f2 = F2(k, l, P, gamma);
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (!(std::abs(det) > 0.0) || !std::isfinite(det)) break;
        const double dk = -(J[1][1] * f1 - J[0][1] * f2) / det;
        const double dl = -(-J[1][0] * f1 + J[0][0] * f2) / det;
        double t = 1.0;
        bool moved = false;
        for (int h = 0; h < 60; ++h, t *= 0.5) {
            const double kn = k + t * dk;
            const double ln = l + t * dl;
            if (!(kn > 0.0 && ln > 0.0)) continue;
            const double rn = resid(kn, ln);
            if (rn < r) {
                k = kn;
                l = ln;
                r = rn;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return {k, l, r};
}

// Roots along the curve l(k): sign changes of k -> F2(k, l(k)).
std::vector<std::pair<double, double>> scan_curve(const ParamSet& P, double gamma, const SolveOptions& opts) {
    std::vector<double> ks;
    const int M = std::max(opts.scan_n, 10);
    ks.reserve(static_cast<std::size_t>(M + 2 * opts.end_refine_n));
    for (int i = 1; i < M; ++i) ks.push_back(static_cast<double>(i) / M);
    if (opts.end_refine_n >= 2) {
        for (double k : roots::log_space(1e-300, 1.0 / M, opts.end_refine_n)) ks.push_back(k);
        for (double d : roots::log_space(1e-15, 1.0 / M, opts.end_refine_n)) ks.push_back(1.0 - d);
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    while (!ks.empty() && !(ks.back() < 1.0)) ks.pop_back();

    const auto phi = [&](double k) { return f2_from_logs(std::log(k), log_ell_of_k(k, P, gamma), P, gamma); };

    std::vector<std::pair<double, double>> found;
    double prev_k = ks.front();
    int prev_s = roots::sign_of(phi(prev_k));
    for (std::size_t i = 1; i < ks.size(); ++i) {
        const double v = phi(ks[i]);
        if (std::isnan(v)) continue;
        const int s = roots::sign_of(v);
        if (s == 0) {
            found.emplace_back(ks[i], std::exp(log_ell_of_k(ks[i], P, gamma)));
            prev_s = 0;
            prev_k = ks[i];
            continue;
        }
        if (prev_s != 0 && s != prev_s) {
            const double k = roots::bisect(phi, prev_k, ks[i], 1e-16);
            found.emplace_back(k, std::exp(log_ell_of_k(k, P, gamma)));
        }
        prev_s = s;
        prev_k = ks[i];
    }
    return found;
}

}  // namespace

GammaSystem::GammaSystem(ParamSet params, double gamma) : params_(params), gamma_(gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("GammaSystem: gamma must be positive");
}

double F1(double k, double l, const ParamSet& P, double gamma) {
    check_first(k, l, gamma);
    const double p = P.p();
    double val = std::pow(k, q_exp(P)) - 1.0;
    if (gamma > 0.0 && l > 0.0) {
        val += (P.alpha() * gamma / P.p_star()) * std::pow(k, (P.alpha() - p) / p) * std::pow(l, P.beta() / p);
    }
    return val;
}

double F2(double k, double l, const ParamSet& P, double gamma) {
    if (!(l > 0.0) || !(k >= 0.0)) throw DomainError("F2: requires k >= 0 and l > 0");
    return F1(l, k, P.swapped(), gamma);
}

double F1(double k, double l, const GammaSystem& sys) { return F1(k, l, sys.params(), sys.gamma()); }
double F2(double k, double l, const GammaSystem& sys) { return F2(k, l, sys.params(), sys.gamma()); }

double ell_of_k(double k, const GammaSystem& sys) {
    if (!(k > 0.0 && k <= 1.0)) throw DomainError("ell_of_k: requires 0 < k <= 1");
    if (k == 1.0) return 0.0;
    return std::exp(log_ell_of_k(k, sys.params(), sys.gamma()));
}

double k_of_ell(double l, const GammaSystem& sys) {
    if (!(l > 0.0 && l <= 1.0)) throw DomainError("k_of_ell: requires 0 < l <= 1");
    return ell_of_k(l, GammaSystem(sys.params().swapped(), sys.gamma()));
}

double ell_prime(double k, const GammaSystem& sys) {
    if (!(k > 0.0 && k <= 1.0)) throw DomainError("ell_prime: requires 0 < k <= 1");
    const ParamSet& P = sys.params();
    const double p = P.p();
    const double a = P.alpha();
    const double b = P.beta();
    const double ps = P.p_star();
    const double q = q_exp(P);
    const double kq = std::pow(k, q);
    const double omk = -std::expm1(q * std::log(k));
    return std::pow(ps / (a * sys.gamma()), p / b) * std::pow(k, (p - ps) / b) * std::pow(omk, (p - b) / b) *
           ((p - a) / b - kq);
}

double gamma_upper_threshold(const ParamSet& P) {
    if (regime_classify(P).window != EnergyWindow::WindowI) {
        throw RegimeError("gamma_upper_threshold: parameters are not in Window_i");
    }
    const double p = P.p();
    const double a = P.alpha();
    const double b = P.beta();
    const double ps = P.p_star();
    const double t1 = (1.0 / a) * std::pow((a - p) / (b - p), (b - p) / p);
    const double t2 = (1.0 / b) * std::pow((b - p) / (a - p), (a - p) / p);
    return ps * (ps - p) / p * std::min(t1, t2);
}

double gamma_lower_threshold(const ParamSet& P) {
    if (regime_classify(P).window != EnergyWindow::WindowII) {
        throw RegimeError("gamma_lower_threshold: parameters are not in Window_ii");
    }
    const double p = P.p();
    const double a = P.alpha();
    const double b = P.beta();
    const double ps = P.p_star();
    const double t1 = (1.0 / a) * std::pow((p - b) / (p - a), (p - b) / p);
    const double t2 = (1.0 / b) * std::pow((p - a) / (p - b), (p - a) / p);
    return ps * (ps - p) / p * std::max(t1, t2);
}

std::vector<AlgebraicSolution> solve_all(const GammaSystem& sys, const SolveOptions& opts) {
    const ParamSet& P = sys.params();
    const double gamma = sys.gamma();

    std::vector<std::pair<double, double>> raw = scan_curve(P, gamma, opts);
    for (const auto& [l, k] : scan_curve(P.swapped(), gamma, opts)) raw.emplace_back(k, l);

    std::vector<AlgebraicSolution> sols;
    for (auto [k, l] : raw) {
        if (!(k > 0.0 && l > 0.0) || !std::isfinite(l)) continue;
        const Newton2D n = newton_2d(k, l, P, gamma);
        const double r1 = F1(n.k, n.l, P, gamma);
        const double r2 = F2(n.k, n.l, P, gamma);
        const auto same = [&](const AlgebraicSolution& s) {
            return std::abs(s.k - n.k) <= 1e-8 * std::max(s.k, n.k) && std::abs(s.l - n.l) <= 1e-8 * std::max(s.l, n.l);
        };
        const auto dup = std::find_if(sols.begin(), sols.end(), same);
        if (dup != sols.end()) {
            if (std::max(std::abs(r1), std::abs(r2)) < std::max(std::abs(dup->residual_F1), std::abs(dup->residual_F2))) {
                *dup = {n.k, n.l, r1, r2, false, false, true};
            }
            continue;
        }
        sols.push_back({n.k, n.l, r1, r2, false, false, true});
    }
    if (sols.empty()) {
        std::ostringstream os;
        os << "solve_all: no sign change of F2(k, l(k)) or F1(k(l), l) on (0,1) for gamma = " << gamma
           << " (scan_n = " << opts.scan_n << ")";
        throw SolveError(os.str());
    }
    std::sort(sols.begin(), sols.end(), [](const auto& x, const auto& y) { return x.k < y.k; });
    for (auto& s : sols) s.in_unit_square = s.k > 0.0 && s.k <= 1.0 && s.l > 0.0 && s.l <= 1.0;
    sols.front().is_k0 = true;
    std::min_element(sols.begin(), sols.end(), [](const auto& x, const auto& y) { return x.l < y.l; })->is_l1 = true;
    return sols;
}

const AlgebraicSolution& k0_solution(const std::vector<AlgebraicSolution>& sols) {
    const auto it = std::find_if(sols.begin(), sols.end(), [](const auto& s) { return s.is_k0; });
    if (it == sols.end()) throw SolveError("k0_solution: no solution flagged is_k0");
    return *it;
}

double least_energy(double k0, double l0, double S, const ParamSet& P) {
    if (!(k0 > 0.0 && l0 > 0.0 && S > 0.0)) throw DomainError("least_energy: inputs must be positive");
    const double ratio = P.s() / P.N();
    return ratio * (k0 + l0) * std::pow(S, P.N() / (P.s() * P.p()));
}

Matrix2 jacobian(double k, double l, const GammaSystem& sys) { return jacobian(k, l, sys.params(), sys.gamma()); }

Matrix2 jacobian(double k, double l, const ParamSet& P, double gamma) {
    if (!(k > 0.0 && l > 0.0)) throw DomainError("jacobian: requires k, l > 0");
    const double p = P.p();
    const double a = P.alpha();
    const double b = P.beta();
    const double ps = P.p_star();
    const double q = q_exp(P);
    const double ca = a * gamma / ps;
    const double cb = b * gamma / ps;
    Matrix2 J{};
    J[0][0] = q * std::pow(k, q - 1.0) + ca * ((a - p) / p) * std::pow(k, (a - p) / p - 1.0) * std::pow(l, b / p);
    J[0][1] = ca * (b / p) * std::pow(k, (a - p) / p) * std::pow(l, b / p - 1.0);
    J[1][0] = cb * (a / p) * std::pow(l, (b - p) / p) * std::pow(k, a / p - 1.0);
    J[1][1] = q * std::pow(l, q - 1.0) + cb * ((b - p) / p) * std::pow(l, (b - p) / p - 1.0) * std::pow(k, a / p);
    return J;
}

BranchResult continue_branch(const ParamSet& P, const std::vector<double>& gamma_grid) {
    if (regime_classify(P).window != EnergyWindow::WindowII) {
        throw RegimeError("continue_branch: parameters are not in Window_ii");
    }
    if (gamma_grid.empty()) throw std::invalid_argument("continue_branch: empty gamma grid");
    for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
        if (!(gamma_grid[i] > 0.0) || (i && !(gamma_grid[i] > gamma_grid[i - 1]))) {
            throw std::invalid_argument("continue_branch: gamma grid must be positive and strictly increasing");
        }
    }

    const double p = P.p();
    const double a = P.alpha();
    const double b = P.beta();
    const double ps = P.p_star();

    BranchResult out;
    double k = 1.0;
    double l = 1.0;
    double gc = 0.0;
    double step = gamma_grid.front();

    for (double target : gamma_grid) {
        while (gc < target) {
            double dg = std::min(step, target - gc);
            bool advanced = false;
            while (!advanced) {
                if (dg < 1e-10) {
                    out.failed = true;
                    std::ostringstream os;
                    os << "continuation step fell below 1e-10 near gamma = " << gc;
                    out.failure = os.str();
                    out.last_good_gamma = gc;
                    return out;
                }
                // Predictor: tangent from J (dk, dl)/dgamma = -dF/dgamma.
                const Matrix2 J = jacobian(k, l, P, gc);
                const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
                double kp = k;
                double lp = l;
                if (std::abs(det) > 0.0 && std::isfinite(det)) {
                    const double r1 = -(a / ps) * std::pow(k, (a - p) / p) * std::pow(l, b / p);
                    const double r2 = -(b / ps) * std::pow(l, (b - p) / p) * std::pow(k, a / p);
                    kp += dg * (J[1][1] * r1 - J[0][1] * r2) / det;
                    lp += dg * (-J[1][0] * r1 + J[0][0] * r2) / det;
                }
                if (kp > 0.0 && lp > 0.0) {
                    const Newton2D n = newton_2d(kp, lp, P, gc + dg, 40);
                    const double jump = std::max(std::abs(n.k - k), std::abs(n.l - l));
                    if (n.residual < 1e-12 && jump < 0.25) {
                        k = n.k;
                        l = n.l;
                        gc = (gc + dg > target) ? target : gc + dg;
                        if (target - gc < 1e-15 * target) gc = target;
                        step = 2.0 * dg;
                        advanced = true;
                        continue;
                    }
                }
                dg *= 0.5;
            }
        }
        const double res = std::max(std::abs(F1(k, l, P, target)), std::abs(F2(k, l, P, target)));
        out.points.push_back({target, k, l, res});
        out.last_good_gamma = target;
    }

    for (const auto& pt : out.points) {
        if (!(pt.k + pt.l > 1.0)) break;
        out.gamma1 = pt.gamma;
    }
    return out;
}

MinimalityProfiles minimality_profiles(double x, const GammaSystem& sys) {
    const ParamSet& P = sys.params();
    if (regime_classify(P).window != EnergyWindow::WindowI) {
        throw RegimeError("minimality_profiles: parameters are not in Window_i");
    }
    if (!(x > 0.0)) throw DomainError("minimality_profiles: requires x > 0");
    const double p = P.p();
    const double a = P.alpha();
    const double b = P.beta();
    const double ps = P.p_star();
    const double g = sys.gamma();
    const double q = q_exp(P);
    const double top = std::pow(x + 1.0, q);
    MinimalityProfiles r{};
    r.f1 = top / (std::pow(x, q) + (a * g / ps) * std::pow(x, (a - p) / p));
    r.f2 = top / (1.0 + (b * g / ps) * std::pow(x, a / p));
    r.g1 = -(ps * (ps - p) / (a * g)) * std::pow(x, b / p) + b * x - a + p;
    r.g2 = ps * (ps - p) / (b * g) + (b - p) * std::pow(x, a / p) - a * std::pow(x, (a - p) / p);
    return r;
}

double profile_x1(const GammaSystem& sys) {
    const ParamSet& P = sys.params();
    const double p = P.p();
    const double ps = P.p_star();
    return std::pow(p * P.alpha() * sys.gamma() / (ps * (ps - p)), p / (P.beta() - p));
}

double profile_x2(const ParamSet& P) {
    if (exponent_equal(P.beta(), P.p())) throw DomainError("profile_x2: requires beta != p");
    return (P.alpha() - P.p()) / (P.beta() - P.p());
}

}  // namespace critcouple::algebraic
