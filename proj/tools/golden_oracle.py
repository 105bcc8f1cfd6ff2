#!/usr/bin/env python3
"""Independent high-precision reference values for data/golden.csv.

Roots of g come from a dense log-spaced sign scan refined with mpmath's
bisection-type solver at 50 digits; tau_min minimises h over {0} and the roots.
Run: python3 tools/golden_oracle.py > data/golden.csv
"""
import mpmath as mp

mp.mp.dps = 50

TUPLES = [
    # N, s, p, alpha (beta = p* - alpha)
    (4, "0.5", "2", "4/3"),
    (1, "0.25", "1.8", "1.5"),
    (3, "0.5", "2", "1.8"),
    (2, "0.5", "2", "2"),
    (3, "0.6", "2", "4/3"),
    (2, "0.75", "2", "6"),
    (2, "0.75", "2", "3"),
    (1, "0.5", "1.5", "4"),
    (1, "0.5", "1.5", "1.2"),
    (3, "0.9", "2", "1.3"),
    (2, "0.75", "2", "2"),
]


def frac(x):
    if "/" in x:
        num, den = x.split("/")
        return mp.mpf(num) / mp.mpf(den)
    return mp.mpf(x)


def main():
    print("N,s,p,alpha,p_star,root_count,tau_min,h_at_tau_min,lambda,mu")
    for N, s, p, a in TUPLES:
        N = mp.mpf(N)
        s, p, a = frac(s), frac(p), frac(a)
        ps = N * p / (N - s * p)
        b = ps - a
        g = lambda t: ps + a * t**b - b * t**(b - p) - ps * t**(ps - p)
        h = lambda t: (1 + t**p) / (1 + t**b + t**ps) ** (p / ps)
        grid = [mp.mpf(10) ** (mp.mpf(k) / 2000) for k in range(-24000, 24001)]
        vals = [g(t) for t in grid]
        roots = []
        for i in range(len(grid) - 1):
            if vals[i] == 0:
                roots.append(grid[i])
            elif vals[i] * vals[i + 1] < 0:
                roots.append(mp.findroot(g, (grid[i], grid[i + 1]), solver="anderson"))
        best_t, best_h = mp.mpf(0), mp.mpf(1)
        for r in roots:
            hr = h(r)
            if hr < best_h - mp.mpf("1e-12") or (abs(hr - best_h) <= mp.mpf("1e-12") and r > best_t):
                best_t, best_h = r, hr
        lam = (ps / (ps + a * best_t**b)) ** (1 / (ps - p))
        row = [N, s, p, a, ps, len(roots), best_t, best_h, lam, best_t * lam]
        print(",".join(str(x) if isinstance(x, int) else mp.nstr(x, 17, min_fixed=-30, max_fixed=30) for x in row))


if __name__ == "__main__":
    main()
