#pragma once

// Reference implementations used only by the tests. They are written against
// the raw exponents (not ParamSet accessors beyond reading them) and evaluate in
// long double, so that agreement with the library is a real cross-check.

#include <cmath>
#include <cstddef>
#include <vector>

#include "critcouple/exponents.hpp"

namespace oracle {

using ld = long double;

struct Exps {
    ld N, s, p, a, b, ps;
};

inline Exps exps(const critcouple::ParamSet& P) {
    const ld N = P.N(), s = P.s(), p = P.p();
    const ld ps = N * p / (N - s * p);
    const ld a = P.alpha();
    return {N, s, p, a, ps - a, ps};
}

inline ld g(ld t, const Exps& e) {
    return e.ps + e.a * std::pow(t, e.b) - e.b * std::pow(t, e.b - e.p) - e.ps * std::pow(t, e.ps - e.p);
}

inline ld h(ld t, const Exps& e) {
    return (1 + std::pow(t, e.p)) / std::pow(1 + std::pow(t, e.b) + std::pow(t, e.ps), e.p / e.ps);
}

/// phi = (p*/p) log(1 + t^p) - log(1 + t^b + t^p*), which has the sign of h - 1.
/// For t > 1 both logs are split off as powers of t, so no large terms cancel.
inline ld phi(ld t, const Exps& e) {
    if (t <= 1) return (e.ps / e.p) * std::log1p(std::pow(t, e.p)) - std::log1p(std::pow(t, e.b) + std::pow(t, e.ps));
    return (e.ps / e.p) * std::log1p(std::pow(t, -e.p)) - std::log1p(std::pow(t, -e.a) + std::pow(t, -e.ps));
}

/// Limit sign of g as t -> 0.
inline int sign_at_zero(const Exps& e) { return e.b < e.p - 1e-12L ? -1 : 1; }
/// Limit sign of g as t -> infinity.
inline int sign_at_infinity(const Exps& e) { return e.a < e.p - 1e-12L ? 1 : -1; }

inline int sgn(ld v) { return (v > 0) - (v < 0); }

struct ScanResult {
    int sign_changes = 0;
    bool ends_settled = false;  ///< the first and last samples already carry the limit signs
    double tau_min = 0;         ///< grid argmin of h, or 0 when no sample has h < 1
    double phi_min = 0;
};

/// Dense sign scan of g and grid minimisation of h on n log-spaced points in [lo, hi].
/// Powers are formed as exp(c log t) in double precision; phi keeps the sign of
/// h - 1 through log1p of small arguments on both sides of t = 1.
inline ScanResult scan(const critcouple::ParamSet& P, int n = 100000, double lo = 1e-12, double hi = 1e12) {
    const Exps el = exps(P);
    const double p = static_cast<double>(el.p), a = static_cast<double>(el.a), b = static_cast<double>(el.b),
                 ps = static_cast<double>(el.ps);
    ScanResult r;
    const double l0 = std::log(lo);
    const double step = (std::log(hi) - l0) / (n - 1);
    int prev = 0;
    int first = 0;
    for (int i = 0; i < n; ++i) {
        const double x = l0 + step * i;
        const double gv = ps + a * std::exp(b * x) - b * std::exp((b - p) * x) - ps * std::exp((ps - p) * x);
        const int sg = (gv > 0) - (gv < 0);
        if (i == 0) first = sg;
        if (sg != 0) {
            if (prev != 0 && sg != prev) ++r.sign_changes;
            prev = sg;
        }
        const double f = x <= 0 ? (ps / p) * std::log1p(std::exp(p * x)) - std::log1p(std::exp(b * x) + std::exp(ps * x))
                                : (ps / p) * std::log1p(std::exp(-p * x)) - std::log1p(std::exp(-a * x) + std::exp(-ps * x));
        if (f < r.phi_min) {
            r.phi_min = f;
            r.tau_min = std::exp(x);
        }
    }
    r.ends_settled = first == sign_at_zero(el) && prev == sign_at_infinity(el);
    return r;
}

/// Central difference of h with a relative step.
inline ld h_derivative(ld t, const Exps& e, ld rel = 1e-6L) {
    const ld d = rel * t;
    return (h(t + d, e) - h(t - d, e)) / (2 * d);
}

/// Direct double sum over all ordered pairs i != j, no tail terms.
inline ld lattice_energy(const std::vector<double>& u, ld L, ld s, ld p) {
    const std::size_t n = u.size();
    const ld dx = 2 * L / n;
    ld sum = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                const ld dist = std::fabs(static_cast<ld>(i) - static_cast<ld>(j)) * dx;
                sum += std::pow(std::fabs(static_cast<ld>(u[i]) - u[j]), p) * std::pow(dist, -1 - s * p);
            }
    return dx * dx * sum;
}

/// int_{|y| > L} |x - y|^(-1-sp) dy for |x| < L, by composite Simpson on each
/// half line after substituting |x - y| = d e^u (d the distance to the boundary).
inline ld exterior_weight(ld x, ld L, ld s, ld p) {
    const ld sp = s * p;
    const int m = 20000;
    const ld U = 80 / sp;
    auto half = [&](ld d) {
        ld acc = 0;
        for (int k = 0; k <= m; ++k) {
            const ld u = U * k / m;
            const ld w = (k == 0 || k == m) ? 1 : (k % 2 ? 4 : 2);
            acc += w * std::exp(-sp * u);
        }
        return std::pow(d, -sp) * acc * U / (3 * m);
    };
    return half(L - x) + half(L + x);
}

}  // namespace oracle
