#pragma once

#include <cmath>
#include <vector>

namespace critcouple::roots {

/// n points, geometrically spaced from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int n);

/// n points, uniformly spaced from lo to hi inclusive.
std::vector<double> lin_space(double lo, double hi, int n);

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// Bisection on a sign-changing bracket [lo, hi]. Uses geometric midpoints while the
/// bracket spans more than a factor of 4 on the positive axis, so brackets such as
/// [1e-300, 1e-8] shrink in a few dozen steps.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-15, int max_iter = 400) {
    int s_lo = sign_of(f(lo));
    if (s_lo == 0) return lo;
    if (sign_of(f(hi)) == 0) return hi;
    for (int it = 0; it < max_iter; ++it) {
        const double mid = (lo > 0.0 && hi > 4.0 * lo) ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const int s_mid = sign_of(f(mid));
        if (s_mid == 0) return mid;
        if (s_mid == s_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

struct PolishResult {
    double x;
    int iterations;
    bool used_newton;
};

/// Newton iterations started from a bisection estimate. A step that leaves [lo, hi] or
/// fails to reduce |f| ends the polish and the best point seen so far is returned.
template <class F, class DF>
PolishResult newton_polish(F&& f, DF&& df, double x0, double lo, double hi, int max_iter = 50) {
    double x = x0;
    double fx = f(x);
    PolishResult out{x0, 0, false};
    for (int it = 0; it < max_iter && fx != 0.0; ++it) {
        const double d = df(x);
        if (!(std::abs(d) > 0.0) || !std::isfinite(d)) break;
        const double next = x - fx / d;
        if (!(next >= lo && next <= hi)) break;
        const double fn = f(next);
        if (!(std::abs(fn) < std::abs(fx))) break;
        x = next;
        fx = fn;
        out = {x, it + 1, true};
    }
    return out;
}

}  // namespace critcouple::roots
