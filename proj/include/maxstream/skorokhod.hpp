#pragma once

#include "maxstream/cadlag.hpp"

namespace maxstream {

/// Distance from x2 to the closed interval between x1 and x3 (either order).
double segment_gap(double x1, double x2, double x3) noexcept;

/// M1 oscillation: sup of segment_gap(f(t1), f(t), f(t2)) over
/// t1 <= t <= t2 with t2 - t1 <= delta. Exact for step functions.
double osc_m1(const StepFunction& f, double delta);

/// J1 oscillation: same windows, min{|f(t) - f(t1)|, |f(t2) - f(t)|}.
double osc_j1(const StepFunction& f, double delta);

inline constexpr double kDefaultMetricTol = 1e-6;

struct MetricOptions {
  double tol = kDefaultMetricTol;
  int max_iterations = 200;
};

/// Upper approximation D of the M1 distance, d <= D <= d + tol.
///
/// The distance between step functions equals the Fréchet distance of their
/// completed graphs under the max-norm on (time, space). For a candidate eps
/// the free-space diagram of the two polylines is swept cell by cell (each
/// cell's free region is convex), which decides d <= eps exactly; eps is then
/// bisected between a lower bound (endpoint gaps) and the uniform distance.
/// Throws ResourceError if the bracket is not below tol after max_iterations.
double d_m1(const StepFunction& f, const StepFunction& g, const MetricOptions& opt = {});

/// Upper approximation of the J1 distance
/// inf over time changes lambda of max{sup|f(lambda(t)) - g(t)|, sup|lambda(t) - t|},
/// with the same d <= D <= d + tol guarantee and the same failure mode.
double d_j1(const StepFunction& f, const StepFunction& g, const MetricOptions& opt = {});

/// Exact decision procedures behind d_m1 / d_j1 (exposed for testing).
bool m1_within(const GraphPolyline& p, const GraphPolyline& q, double eps);
bool j1_within(const StepFunction& f, const StepFunction& g, double eps);

}  // namespace maxstream
