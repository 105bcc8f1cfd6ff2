#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace critcouple {

/// Raised when a formula is evaluated outside the set where it is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by validate_params; carries every violated constraint, not just the first.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Raised when an operation is called outside the parameter window it is stated for.
class RegimeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Absolute tolerance for the constraint alpha + beta = p*.
inline constexpr double kSumTolerance = 1e-9;

/// Exponent tuple (N, s, p, alpha, beta) with the derived critical exponent.
///
/// Instances only come out of validate_params / ParamSet::from_alpha, so every
/// ParamSet in circulation satisfies 0<s<1, p>1, N>sp, alpha,beta>1 and
/// alpha+beta = p*.
class ParamSet {
public:
    int N() const noexcept { return N_; }
    double s() const noexcept { return s_; }
    double p() const noexcept { return p_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double p_star() const noexcept { return p_star_; }

    /// The preferred constructor: beta is derived as p* - alpha exactly.
    static ParamSet from_alpha(int N, double s, double p, double alpha);

    /// Same exponents with alpha and beta exchanged.
    ParamSet swapped() const;

private:
    friend ParamSet validate_params(double, double, double, double, double);
    ParamSet(int N, double s, double p, double alpha, double beta, double p_star)
        : N_(N), s_(s), p_(p), alpha_(alpha), beta_(beta), p_star_(p_star) {}

    int N_;
    double s_;
    double p_;
    double alpha_;
    double beta_;
    double p_star_;
};

/// N p / (N - s p). Throws DomainError unless 0<s<1, p>1, N>sp.
double critical_exponent(int N, double s, double p);

/// Checks all constraints on a raw tuple; each failure is listed in the thrown ValidationError.
ParamSet validate_params(double N, double s, double p, double alpha, double beta);

enum class TauMinCase {
    BetaBelowP,           ///< 1 < beta < p
    BetaEqualsPAlphaBelow,///< beta = p, alpha < p
    BetaAbovePAlphaBelow, ///< beta > p, alpha < p
    Degenerate,           ///< every other tuple: tau_min = 0
};

enum class EnergyWindow {
    WindowI,   ///< N/(2s) < p < N/s, alpha, beta > p
    WindowII,  ///< 2N/(N+2s) < p < N/(2s), alpha, beta < p
    Neither,
};

struct Regime {
    TauMinCase tau_min_case;
    EnergyWindow window;
};

Regime regime_classify(const ParamSet& params);

std::string_view to_string(TauMinCase c);
std::string_view to_string(EnergyWindow w);

/// Equality test used wherever an exponent is compared to p (alpha = p, beta = p).
bool exponent_equal(double a, double b);

}  // namespace critcouple
