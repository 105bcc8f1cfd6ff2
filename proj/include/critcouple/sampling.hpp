#pragma once

#include <random>

#include "critcouple/coupling.hpp"
#include "critcouple/exponents.hpp"

namespace critcouple::sampling {

/// Random admissible tuples used by the property checks.
///
/// Draws keep |alpha - p| and |beta - p| at least `margin` away from zero except
/// where a case demands equality, keep p* at most 30 and N - sp at least 0.1.
struct SamplerLimits {
    int max_N = 6;
    double min_p = 1.05;
    double max_p = 4.0;
    double margin = 0.05;
    double max_p_star = 30.0;
};

/// A tuple in the given case of the coupling-function analysis.
ParamSet sample_case(coupling::SignCase c, std::mt19937_64& rng, const SamplerLimits& lim = {});

/// A tuple in Window_i or Window_ii (throws std::invalid_argument for Neither).
ParamSet sample_window(EnergyWindow w, std::mt19937_64& rng, const SamplerLimits& lim = {});

/// Cycles through the seven cases: index i gets case i mod 7.
ParamSet sample_any(int index, std::mt19937_64& rng, const SamplerLimits& lim = {});

/// Tuple with N = 1 (so sp < 1) in the given case, for the lattice checks.
ParamSet sample_lattice_case(coupling::SignCase c, std::mt19937_64& rng);

}  // namespace critcouple::sampling
