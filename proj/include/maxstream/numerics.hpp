#pragma once

#include <span>
#include <vector>

namespace maxstream {

/// Gauss–Hermite rule for integrals against exp(-x^2).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussHermiteRule(int order);

  /// E f(Z) for Z ~ N(0, 1).
  template <class F>
  double expect_normal(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(kSqrt2 * nodes[i]);
    return s * kInvSqrtPi;
  }

  static constexpr double kSqrt2 = 1.4142135623730950488;
  static constexpr double kInvSqrtPi = 0.56418958354775628695;
};

/// Inverse of the standard normal CDF.
double normal_quantile(double u);

/// Empirical p-quantile (order statistic at ceil(p * n) - 1); reorders `xs`.
double empirical_quantile(std::span<double> xs, double p);

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};
MeanVar mean_var(std::span<const double> xs);

}  // namespace maxstream
