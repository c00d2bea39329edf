#pragma once

#include <cstdint>
#include <span>

#include "maxstream/cadlag.hpp"
#include "maxstream/maxima.hpp"

namespace maxstream {

inline constexpr double kDefaultExtremalFloor = 0.05;

/// Poisson process on [0, 1] x (floor, inf) with mean measure
/// dt x theta alpha y^{-alpha-1} dy: Poisson(theta floor^{-alpha}) atoms,
/// uniform times, marks floor U^{-1/alpha}.
PointMeasure simulate_extremal_points(double alpha, double theta, double floor, std::uint64_t seed);

/// Running maximum of a Poisson process on [0, 1] x [floor, inf) with mean
/// measure dt x theta alpha y^{-alpha-1} dy, started at 0. For levels
/// x >= floor, P(path(t) <= x) = exp(-t theta x^{-alpha}).
StepFunction simulate_extremal_process(double alpha, double theta, double floor, std::uint64_t seed);

/// prod_j exp(-(t_j - t_{j-1}) theta (min_{i >= j} x_i)^{-alpha}), t_0 = 0.
double extremal_fidi_prob(double alpha, double theta, std::span<const double> times, std::span<const double> levels);

}  // namespace maxstream
