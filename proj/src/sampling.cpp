#include "critcouple/sampling.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>

namespace critcouple::sampling {

namespace {

using coupling::SignCase;

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Candidate (N, s, p) with the basic limits; p* is returned through the ParamSet later.
struct Base {
    int N;
    double s;
    double p;
    double ps;
};

Base draw_base(std::mt19937_64& rng, const SamplerLimits& lim, int max_N) {
    for (;;) {
        const int N = std::uniform_int_distribution<int>(1, max_N)(rng);
        const double s = uniform(rng, 0.05, 0.95);
        const double p = uniform(rng, lim.min_p, lim.max_p);
        if (N - s * p < 0.1) continue;
        const double ps = critical_exponent(N, s, p);
        if (ps > lim.max_p_star) continue;
        return {N, s, p, ps};
    }
}

/// Uniform draw from (lo + m, hi - m); nullopt-like failure signalled by lo >= hi.
bool draw_in(std::mt19937_64& rng, double lo, double hi, double m, double& out) {
    if (hi - lo <= 2 * m + 1e-3) return false;
    out = uniform(rng, lo + m, hi - m);
    return true;
}

std::optional<ParamSet> try_case(SignCase c, const Base& b, std::mt19937_64& rng, double m) {
    const double p = b.p;
    const double ps = b.ps;
    double a = 0.0;
    bool ok = false;
    switch (c) {
        case SignCase::C1:  // beta < p: alpha in (p* - p, p* - 1)
            ok = draw_in(rng, std::max(ps - p, 1.0), ps - 1.0, m, a);
            break;
        case SignCase::C2i:
        case SignCase::C2ii:
        case SignCase::C2iii:
            a = ps - p;
            ok = a > 1.0 + m;
            if (c == SignCase::C2ii) ok = ok && a < p - m;
            if (c == SignCase::C2iii) ok = ok && a > p + m;
            if (c == SignCase::C2i) ok = false;  // drawn separately
            break;
        case SignCase::C3i:  // p < alpha < p* - p
            ok = draw_in(rng, p, ps - p, m, a);
            break;
        case SignCase::C3ii:  // 1 < alpha < min(p, p* - p)
            ok = draw_in(rng, 1.0, std::min(p, ps - p), m, a);
            break;
        case SignCase::C3iii:
            a = p;
            ok = ps - p > p + m;
            break;
    }
    if (!ok) return std::nullopt;
    try {
        ParamSet P = ParamSet::from_alpha(b.N, b.s, b.p, a);
        if (coupling::sign_case(P) != c) return std::nullopt;
        return P;
    } catch (const ValidationError&) {
        return std::nullopt;
    }
}

}  // namespace

ParamSet sample_case(SignCase c, std::mt19937_64& rng, const SamplerLimits& lim) {
    if (c == SignCase::C2i) {
        // N = 2sp: pick N and p, then s = N/(2p); alpha = beta = p.
        for (;;) {
            const int N = std::uniform_int_distribution<int>(1, lim.max_N)(rng);
            const double p = uniform(rng, std::max(lim.min_p, N / 1.9), std::max(lim.max_p, N / 1.9 + 0.5));
            const double s = N / (2.0 * p);
            if (!(s > 0.0 && s < 0.95)) continue;
            try {
                ParamSet P = ParamSet::from_alpha(N, s, p, p);
                if (coupling::sign_case(P) == c) return P;
            } catch (const ValidationError&) {
            }
        }
    }
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const Base b = draw_base(rng, lim, lim.max_N);
        if (auto P = try_case(c, b, rng, lim.margin)) return *P;
    }
    throw std::runtime_error("sample_case: no admissible tuple found");
}

ParamSet sample_window(EnergyWindow w, std::mt19937_64& rng, const SamplerLimits& lim) {
    if (w == EnergyWindow::Neither) throw std::invalid_argument("sample_window: Neither is not a window");
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const Base b = draw_base(rng, lim, lim.max_N);
        const double p = b.p;
        const double ps = b.ps;
        double a = 0.0;
        bool ok = false;
        if (w == EnergyWindow::WindowI) {
            ok = draw_in(rng, p, ps - p, lim.margin, a);
        } else {
            ok = draw_in(rng, std::max(1.0, ps - p), std::min(p, ps - 1.0), lim.margin, a);
        }
        if (!ok) continue;
        try {
            ParamSet P = ParamSet::from_alpha(b.N, b.s, b.p, a);
            if (regime_classify(P).window == w) return P;
        } catch (const ValidationError&) {
        }
    }
    throw std::runtime_error("sample_window: no admissible tuple found");
}

ParamSet sample_any(int index, std::mt19937_64& rng, const SamplerLimits& lim) {
    static constexpr std::array<SignCase, 7> kAll{SignCase::C1,  SignCase::C2i,  SignCase::C2ii, SignCase::C2iii,
                                                    SignCase::C3i, SignCase::C3ii, SignCase::C3iii};
    return sample_case(kAll[static_cast<std::size_t>(((index % 7) + 7) % 7)], rng, lim);
}

ParamSet sample_lattice_case(SignCase c, std::mt19937_64& rng) {
    SamplerLimits lim;
    lim.max_N = 1;
    return sample_case(c, rng, lim);
}

}  // namespace critcouple::sampling
