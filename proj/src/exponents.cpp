#include "critcouple/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace critcouple {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::ostringstream os;
    os << "invalid parameters: ";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << "; ";
        os << parts[i];
    }
    return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

double critical_exponent(int N, double s, double p) {
    if (N < 1) throw DomainError("critical_exponent: N must be a positive integer");
    if (!(s > 0.0 && s < 1.0)) throw DomainError("critical_exponent: s must lie in (0,1)");
    if (!(p > 1.0)) throw DomainError("critical_exponent: p must exceed 1");
    const double denom = N - s * p;
    if (!(denom > 0.0)) throw DomainError("critical_exponent: requires N > s*p");
    return N * p / denom;
}

ParamSet validate_params(double N, double s, double p, double alpha, double beta) {
    std::vector<std::string> bad;
    const bool n_ok = std::isfinite(N) && N >= 1.0 && std::floor(N) == N;
    if (!n_ok) bad.emplace_back("N must be a positive integer");
    if (!(s > 0.0 && s < 1.0)) bad.emplace_back("s must lie in (0,1)");
    if (!(p > 1.0) || !std::isfinite(p)) bad.emplace_back("p must exceed 1");
    if (n_ok && std::isfinite(s) && std::isfinite(p) && !(N > s * p)) {
        bad.emplace_back("N > s*p fails");
    }
    if (!(alpha > 1.0) || !std::isfinite(alpha)) bad.emplace_back("alpha must exceed 1");
    if (!(beta > 1.0) || !std::isfinite(beta)) bad.emplace_back("beta must exceed 1");

    double p_star = 0.0;
    if (bad.empty()) {
        p_star = N * p / (N - s * p);
        if (std::abs(alpha + beta - p_star) > kSumTolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "alpha + beta = " << alpha + beta << " differs from p* = " << p_star;
            bad.push_back(os.str());
        }
    }
    if (!bad.empty()) throw ValidationError(std::move(bad));
    return ParamSet(static_cast<int>(N), s, p, alpha, beta, p_star);
}

ParamSet ParamSet::from_alpha(int N, double s, double p, double alpha) {
    double p_star = 0.0;
    try {
        p_star = critical_exponent(N, s, p);
    } catch (const DomainError&) {
        // Let validate_params report every violation together.
        return validate_params(N, s, p, alpha, 2.0);
    }
    return validate_params(N, s, p, alpha, p_star - alpha);
}

ParamSet ParamSet::swapped() const { return ParamSet(N_, s_, p_, beta_, alpha_, p_star_); }

bool exponent_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

Regime regime_classify(const ParamSet& params) {
    const double p = params.p();
    const double a = params.alpha();
    const double b = params.beta();
    const bool a_eq = exponent_equal(a, p);
    const bool b_eq = exponent_equal(b, p);

    TauMinCase c = TauMinCase::Degenerate;
    if (!b_eq && b < p) {
        c = TauMinCase::BetaBelowP;
    } else if (b_eq && !a_eq && a < p) {
        c = TauMinCase::BetaEqualsPAlphaBelow;
    } else if (!b_eq && b > p && !a_eq && a < p) {
        c = TauMinCase::BetaAbovePAlphaBelow;
    }

    // The windows use strict inequalities; touching a boundary classifies as Neither.
    const double N = params.N();
    const double s = params.s();
    EnergyWindow w = EnergyWindow::Neither;
    const bool a_above = !a_eq && a > p;
    const bool b_above = !b_eq && b > p;
    const bool a_below = !a_eq && a < p;
    const bool b_below = !b_eq && b < p;
    if (N / (2 * s) < p && p < N / s && a_above && b_above) {
        w = EnergyWindow::WindowI;
    } else if (2 * N / (N + 2 * s) < p && p < N / (2 * s) && a_below && b_below) {
        w = EnergyWindow::WindowII;
    }
    return {c, w};
}

std::string_view to_string(TauMinCase c) {
    switch (c) {
        case TauMinCase::BetaBelowP: return "Case_i_beta_lt_p";
        case TauMinCase::BetaEqualsPAlphaBelow: return "Case_ii_beta_eq_p_alpha_lt_p";
        case TauMinCase::BetaAbovePAlphaBelow: return "Case_iii_beta_gt_p_alpha_lt_p";
        case TauMinCase::Degenerate: return "Degenerate_tau_min_zero";
    }
    return "?";
}

std::string_view to_string(EnergyWindow w) {
    switch (w) {
        case EnergyWindow::WindowI: return "Window_i";
        case EnergyWindow::WindowII: return "Window_ii";
        case EnergyWindow::Neither: return "Neither";
    }
    return "?";
}

}  // namespace critcouple
