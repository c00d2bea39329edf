#include "maxstream/regvar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace maxstream {

LimitLaw::LimitLaw(double alpha_, double theta_, double scale_) : alpha(alpha_), theta(theta_), scale(scale_) {
  if (!(alpha > 0.0)) throw std::invalid_argument("LimitLaw: alpha must be positive");
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("LimitLaw: theta must lie in (0, 1]");
  if (!(scale > 0.0)) throw std::invalid_argument("LimitLaw: scale must be positive");
}

double frechet_cdf(double alpha, double theta, double x) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return std::exp(-theta * std::pow(x, -alpha));
}

double frechet_quantile(double alpha, double theta, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("frechet_quantile: p must lie in (0, 1)");
  return std::pow(-std::log(p) / theta, -1.0 / alpha);
}

double frechet_from_uniform(double u, double alpha, double scale) { return scale * std::pow(-std::log(u), -1.0 / alpha); }

double sample_frechet(RandomStream& rng, double alpha, double scale) {
  const double u = rng.uniform();
  if (alpha == 1.0) return -scale / std::log(u);
  return frechet_from_uniform(u, alpha, scale);
}

double hill_estimator(std::span<const double> sample, std::size_t k) {
  if (k < 1 || k >= sample.size()) throw std::domain_error("hill_estimator: need 1 <= k < n");
  std::vector<double> top(sample.begin(), sample.end());
  std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k + 1), top.end(), std::greater<>());
  const double ref = top[k];
  if (!(ref > 0.0)) throw std::domain_error("hill_estimator: the k+1 largest values must be positive");
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += std::log(top[i] / ref);
  if (!(s > 0.0)) throw std::domain_error("hill_estimator: top order statistics are tied");
  return static_cast<double>(k) / s;
}

double karamata_ratio(double alpha, double s, double eps, std::int64_t n) {
  if (!(alpha > 0.0) || !(eps > 0.0)) throw std::domain_error("karamata_ratio: alpha and eps must be positive");
  if (!(s > alpha)) throw std::domain_error("karamata_ratio: need s > alpha");
  if (n < 2) throw std::domain_error("karamata_ratio: n must be at least 2");
  const double an = std::pow(-std::log1p(-1.0 / static_cast<double>(n)), -1.0 / alpha);
  const double u = eps * an;
  const double u_neg = std::pow(u, -alpha);
  // With x = u e^{-y}: E(X^s 1{X<u}) / u^s = int_0^inf e^{-s y} w e^{-w} alpha dy, w = u^{-alpha} e^{alpha y}.
  auto integrand = [&](double y) {
    const double w = u_neg * std::exp(alpha * y);
    if (!std::isfinite(w)) return 0.0;
    return alpha * std::exp(-s * y) * w * std::exp(-w);
  };
  // The mass sits near w = 1; split there so the adaptive rule sees the peak.
  const double peak = std::max(0.0, -std::log(u_neg) / alpha);
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double num = 0.0;
  if (peak > 0.0) num += GK::integrate(integrand, 0.0, peak, 20, 1e-13);
  num += GK::integrate(integrand, peak, std::numeric_limits<double>::infinity(), 20, 1e-13);
  const double tail = -std::expm1(-u_neg);
  return num / tail;
}

}  // namespace maxstream
