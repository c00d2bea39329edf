#pragma once

#include <cstdint>
#include <span>

#include "maxstream/rng.hpp"

namespace maxstream {

class ProcessModel;

/// Fréchet limit e^{-theta x^{-alpha}} together with the marginal scale of
/// the generating process, when it has one.
struct LimitLaw {
  double alpha = 1.0;
  double theta = 1.0;
  double scale = 1.0;

  LimitLaw() = default;
  LimitLaw(double alpha, double theta, double scale = 1.0);
};

/// e^{-theta x^{-alpha}} for x > 0, 0 otherwise.
double frechet_cdf(double alpha, double theta, double x);

/// x with frechet_cdf(alpha, theta, x) = p.
double frechet_quantile(double alpha, double theta, double p);

/// scale * (-ln u)^{-1/alpha}: inverse transform of a uniform variate.
double frechet_from_uniform(double u, double alpha, double scale);

double sample_frechet(RandomStream& rng, double alpha, double scale);

/// Unit Fréchet draw, -1 / ln U.
inline double sample_unit_frechet(RandomStream& rng) { return sample_frechet(rng, 1.0, 1.0); }

/// The exact (1 - 1/n)-quantile of the marginal of X_1 (Monte Carlo for the
/// squared GARCH model). Throws std::domain_error for n < 2.
double normalizer_an(const ProcessModel& model, std::int64_t n);

/// Hill's estimate of the tail index from the k largest values.
double hill_estimator(std::span<const double> sample, std::size_t k);

/// E(X^s 1{X < eps a_n}) / (eps^s a_n^s P(X > eps a_n)) for X with CDF
/// e^{-x^{-alpha}}, a_n its (1 - 1/n)-quantile. Tends to alpha / (s - alpha).
double karamata_ratio(double alpha, double s, double eps, std::int64_t n);

}  // namespace maxstream
