#include "maxstream/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/policies/policy.hpp>

#include "maxstream/maxima.hpp"
#include "maxstream/rng.hpp"

namespace maxstream {

PointMeasure simulate_extremal_points(double alpha, double theta, double floor, std::uint64_t seed) {
  if (!(alpha > 0.0) || !(theta > 0.0) || !(floor > 0.0)) {
    throw std::domain_error("extremal process: alpha, theta and floor must be positive");
  }
  using Policy = boost::math::policies::policy<
      boost::math::policies::discrete_quantile<boost::math::policies::integer_round_up>>;
  const boost::math::poisson_distribution<double, Policy> count_law(theta * std::pow(floor, -alpha));

  RandomStream rng(seed);
  const auto count = static_cast<std::size_t>(boost::math::quantile(count_law, rng.uniform()));
  std::vector<Atom> atoms(count);
  for (Atom& a : atoms) {
    a.time = rng.uniform();
    a.mark = floor * std::pow(rng.uniform(), -1.0 / alpha);
  }
  return PointMeasure(std::move(atoms));
}

StepFunction simulate_extremal_process(double alpha, double theta, double floor, std::uint64_t seed) {
  // Marks are strictly above the floor, so the maximum functional at the floor keeps them all.
  return max_functional(simulate_extremal_points(alpha, theta, floor, seed), floor);
}

double extremal_fidi_prob(double alpha, double theta, std::span<const double> times, std::span<const double> levels) {
  if (times.empty() || times.size() != levels.size()) {
    throw std::domain_error("extremal_fidi_prob: times and levels must be nonempty and of equal length");
  }
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev && t <= 1.0)) throw std::domain_error("extremal_fidi_prob: times must increase strictly within (0, 1]");
    prev = t;
  }
  for (double x : levels) {
    if (!(x > 0.0)) throw std::domain_error("extremal_fidi_prob: levels must be positive");
  }
  double exponent = 0.0;
  double tail_min = INFINITY;
  for (std::size_t j = times.size(); j-- > 0;) {
    tail_min = std::min(tail_min, levels[j]);
    const double dt = times[j] - (j == 0 ? 0.0 : times[j - 1]);
    if (std::isfinite(tail_min)) exponent += dt * theta * std::pow(tail_min, -alpha);
  }
  return std::exp(-exponent);
}

}  // namespace maxstream
