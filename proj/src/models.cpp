#include "maxstream/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "maxstream/errors.hpp"
#include "maxstream/numerics.hpp"

namespace maxstream {

namespace {

double garch_log_moment(double alpha1, double beta1) {
  static const GaussHermiteRule rule(200);
  return rule.expect_normal([&](double z) { return std::log(alpha1 * z * z + beta1); });
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ProcessModel ProcessModel::iid(double alpha, double scale) {
  if (!(alpha > 0.0) || !(scale > 0.0)) throw std::invalid_argument("iid model: alpha and scale must be positive");
  return ProcessModel(IidFrechet{alpha, scale});
}

ProcessModel ProcessModel::moving_maxima(std::vector<double> coeffs) {
  if (coeffs.size() < 2) throw std::invalid_argument("moving maxima: need coefficients c_0..c_m with m >= 1");
  for (double c : coeffs) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("moving maxima: coefficients must be finite and >= 0");
  }
  if (!(coeffs.front() > 0.0) || !(coeffs.back() > 0.0)) {
    throw std::invalid_argument("moving maxima: c_0 and c_m must be nonzero");
  }
  const double total = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
  for (double& c : coeffs) c /= total;
  return ProcessModel(MovingMaxima{std::move(coeffs)});
}

ProcessModel ProcessModel::armax(double c) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("armax: c must lie in (0, 1)");
  return ProcessModel(Armax{c});
}

ProcessModel ProcessModel::squared_garch(double alpha0, double alpha1, double beta1) {
  if (!(alpha0 > 0.0) || !(alpha1 > 0.0) || !(beta1 > 0.0)) {
    throw std::invalid_argument("squared GARCH: alpha0, alpha1, beta1 must be positive");
  }
  if (!(garch_log_moment(alpha1, beta1) < 0.0)) {
    throw std::invalid_argument("squared GARCH: E ln(alpha1 Z^2 + beta1) must be negative for a stationary solution");
  }
  return ProcessModel(SquaredGarch{alpha0, alpha1, beta1});
}

std::string ProcessModel::name() const {
  return std::visit(Overloaded{[](const IidFrechet&) { return std::string("iid"); },
                               [](const MovingMaxima&) { return std::string("mm"); },
                               [](const Armax&) { return std::string("armax"); },
                               [](const SquaredGarch&) { return std::string("garch2"); }},
                    v_);
}

int armax_truncation(double c) { return static_cast<int>(std::ceil(std::log(kArmaxTruncationTol) / std::log(c))); }

void generate_into(const ProcessModel& model, RandomStream& rng, std::span<double> out) {
  std::visit(Overloaded{
                 [&](const IidFrechet& m) {
                   for (double& x : out) x = sample_frechet(rng, m.alpha, m.scale);
                 },
                 [&](const MovingMaxima& m) {
                   // ring[(t + k) % width] holds Z_{t-m+k}; pre-period noise first.
                   const std::size_t width = m.coeffs.size();
                   std::vector<double> ring(width);
                   for (std::size_t k = 0; k + 1 < width; ++k) ring[k] = sample_unit_frechet(rng);
                   std::size_t head = width - 1;
                   for (double& x : out) {
                     ring[head] = sample_unit_frechet(rng);
                     double v = 0.0;
                     for (std::size_t i = 0; i < width; ++i) {
                       v = std::max(v, m.coeffs[i] * ring[(head + width - i) % width]);
                     }
                     x = v;
                     head = (head + 1) % width;
                   }
                 },
                 [&](const Armax& m) {
                   const int lags = armax_truncation(m.c);
                   double x = 0.0;
                   double w = 1.0;
                   for (int i = 0; i <= lags; ++i, w *= m.c) x = std::max(x, w * sample_unit_frechet(rng));
                   for (double& v : out) {
                     x = std::max(m.c * x, sample_unit_frechet(rng));
                     v = x;
                   }
                 },
                 [&](const SquaredGarch& m) {
                   double s2 = m.alpha1 + m.beta1 < 1.0 ? m.alpha0 / (1.0 - m.alpha1 - m.beta1) : m.alpha0;
                   for (std::int64_t step = 0; step < kGarchBurnIn; ++step) {
                     const double z = normal_quantile(rng.uniform());
                     s2 = m.alpha0 + (m.alpha1 * z * z + m.beta1) * s2;
                   }
                   for (double& v : out) {
                     const double z = normal_quantile(rng.uniform());
                     v = s2 * z * z;
                     s2 = m.alpha0 + (m.alpha1 * z * z + m.beta1) * s2;
                   }
                 }},
             model.variant());
}

std::vector<double> generate(const ProcessModel& model, std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("generate: n must be at least 1");
  std::vector<double> out(static_cast<std::size_t>(n));
  RandomStream rng(seed);
  generate_into(model, rng, out);
  return out;
}

std::vector<double> moving_maxima_from_noise(std::span<const double> coeffs, std::span<const double> noise) {
  if (coeffs.empty() || noise.size() < coeffs.size()) {
    throw std::invalid_argument("moving_maxima_from_noise: need at least m + 1 noise values");
  }
  const std::size_t m = coeffs.size() - 1;
  std::vector<double> out(noise.size() - m);
  for (std::size_t t = 0; t < out.size(); ++t) {
    double v = 0.0;
    for (std::size_t i = 0; i <= m; ++i) v = std::max(v, coeffs[i] * noise[t + m - i]);
    out[t] = v;
  }
  return out;
}

std::vector<double> armax_from_noise(double c, double x0, std::span<const double> noise) {
  std::vector<double> out(noise.size());
  double x = x0;
  for (std::size_t t = 0; t < noise.size(); ++t) out[t] = x = std::max(c * x, noise[t]);
  return out;
}

double marginal_cdf(const ProcessModel& model, double x) {
  return std::visit(Overloaded{[&](const IidFrechet& m) { return frechet_cdf(m.alpha, 1.0, x / m.scale); },
                               [&](const MovingMaxima&) { return frechet_cdf(1.0, 1.0, x); },
                               [&](const Armax& m) { return frechet_cdf(1.0, 1.0 / (1.0 - m.c), x); },
                               [&](const SquaredGarch&) -> double {
                                 throw std::domain_error("marginal_cdf: no closed form for squared GARCH");
                               }},
                    model.variant());
}

QuantileEstimate garch_marginal_quantile(const SquaredGarch& g, double p, const GarchQuantileOptions& opt) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("garch_marginal_quantile: p must lie in (0, 1)");
  using Key = std::tuple<double, double, double, double, std::int64_t, std::uint64_t, int, std::int64_t>;
  static std::mutex mu;
  static std::map<Key, QuantileEstimate> cache;
  const Key key{g.alpha0, g.alpha1, g.beta1, p, opt.samples, opt.seed, opt.bootstrap_resamples, opt.bootstrap_block};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  const auto model = ProcessModel::squared_garch(g.alpha0, g.alpha1, g.beta1);
  const std::vector<double> path = generate(model, opt.samples, opt.seed);
  std::vector<double> scratch = path;
  QuantileEstimate est;
  est.value = empirical_quantile(scratch, p);

  const auto n = static_cast<std::int64_t>(path.size());
  const std::int64_t block = std::clamp<std::int64_t>(opt.bootstrap_block, 1, n);
  if (opt.bootstrap_resamples > 1) {
    std::vector<double> qs;
    for (int r = 0; r < opt.bootstrap_resamples; ++r) {
      RandomStream rng(derive_seed(opt.seed, static_cast<std::uint64_t>(r) + 1));
      std::int64_t filled = 0;
      while (filled < n) {
        const auto start = static_cast<std::int64_t>(rng.uniform() * static_cast<double>(n - block + 1));
        const std::int64_t len = std::min(block, n - filled);
        std::copy_n(path.begin() + start, len, scratch.begin() + filled);
        filled += len;
      }
      qs.push_back(empirical_quantile(scratch, p));
    }
    est.std_error = std::sqrt(mean_var(qs).variance);
  }
  std::lock_guard lock(mu);
  cache.emplace(key, est);
  return est;
}

namespace {

// Quantile at level p = exp(-neglogp); passing -ln p directly keeps
// precision for p = 1 - 1/n with large n.
double quantile_from_neglog(const ProcessModel& model, double neglogp) {
  return std::visit(
      Overloaded{[&](const IidFrechet& m) { return m.scale * std::pow(neglogp, -1.0 / m.alpha); },
                 [&](const MovingMaxima&) { return 1.0 / neglogp; },
                 [&](const Armax& m) { return 1.0 / ((1.0 - m.c) * neglogp); },
                 [&](const SquaredGarch& g) {
                   return garch_marginal_quantile(g, std::exp(-neglogp), {.bootstrap_resamples = 0}).value;
                 }},
      model.variant());
}

}  // namespace

double marginal_quantile(const ProcessModel& model, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("marginal_quantile: p must lie in (0, 1)");
  return quantile_from_neglog(model, -std::log(p));
}

double normalizer_an(const ProcessModel& model, std::int64_t n) {
  if (n < 2) throw std::domain_error("normalizer_an: n must be at least 2");
  return quantile_from_neglog(model, -std::log1p(-1.0 / static_cast<double>(n)));
}

double garch_tail_index(double alpha1, double beta1, const GarchTailOptions& opt) {
  if (!(alpha1 >= 0.0) || !(beta1 >= 0.0) || alpha1 + beta1 == 0.0) {
    throw std::domain_error("garch_tail_index: alpha1, beta1 must be nonnegative and not both zero");
  }
  const GaussHermiteRule rule(opt.quadrature_nodes);
  const double log_moment = rule.expect_normal([&](double z) { return std::log(alpha1 * z * z + beta1); });
  if (!(log_moment < 0.0)) throw std::domain_error("garch_tail_index: E ln(alpha1 Z^2 + beta1) must be negative");

  auto h = [&](double a) { return rule.expect_normal([&](double z) { return std::pow(alpha1 * z * z + beta1, a); }) - 1.0; };
  double hi = 1.0;
  while (h(hi) < 0.0) {
    hi *= 2.0;
    if (hi > opt.alpha_max) throw ResourceError("garch_tail_index: no sign change below alpha_max");
  }
  double lo = hi / 2.0;
  while (h(lo) >= 0.0) {
    lo /= 2.0;
    if (lo < 1e-12) throw ResourceError("garch_tail_index: could not bracket the root from below");
  }
  const auto [a, b] = boost::math::tools::bisect(h, lo, hi, [&](double x, double y) { return std::abs(y - x) <= opt.tol; });
  return 0.5 * (a + b);
}

GarchThetaEstimate garch_extremal_index(double alpha1, double beta1, int k_max, std::int64_t trials, std::uint64_t seed,
                                        const Executor& ex) {
  if (k_max < 1 || trials < 1) throw std::domain_error("garch_extremal_index: k_max and trials must be positive");
  GarchThetaEstimate out;
  out.alpha = garch_tail_index(alpha1, beta1);
  const double a = out.alpha;
  const double denom = std::pow(2.0, a) * boost::math::tgamma(a + 0.5) / std::sqrt(std::numbers::pi);
  const auto k = static_cast<std::size_t>(k_max);

  struct Sums {
    std::vector<double> s1, s2;
  };
  const auto chunks = map_chunks<Sums>(ex, static_cast<std::size_t>(trials), 1024, [&](std::size_t begin, std::size_t end) {
    Sums s{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
    std::vector<double> z(k + 2);
    for (std::size_t t = begin; t < end; ++t) {
      RandomStream rng(derive_seed(seed, t));
      for (double& v : z) v = normal_quantile(rng.uniform());
      const double lead = std::pow(z[1] * z[1], a);
      double prod = 1.0;
      double running = 0.0;
      for (std::size_t j = 1; j <= k + 1; ++j) {
        prod *= alpha1 * z[j - 1] * z[j - 1] + beta1;
        if (j < 2) continue;
        running = std::max(running, std::pow(z[j] * z[j] * prod, a));
        const double v = std::max(lead - running, 0.0);
        s.s1[j - 2] += v;
        s.s2[j - 2] += v * v;
      }
    }
    return s;
  });

  std::vector<double> s1(k, 0.0), s2(k, 0.0);
  for (const Sums& c : chunks) {
    for (std::size_t i = 0; i < k; ++i) {
      s1[i] += c.s1[i];
      s2[i] += c.s2[i];
    }
  }
  const auto nt = static_cast<double>(trials);
  for (std::size_t i = 0; i < k; ++i) {
    const double mean = s1[i] / nt;
    const double var = trials > 1 ? std::max(0.0, (s2[i] - nt * mean * mean) / (nt - 1.0)) : 0.0;
    out.by_k.push_back(mean / denom);
    out.std_error_by_k.push_back(std::sqrt(var / nt) / denom);
  }
  out.estimate = out.by_k.back();
  out.std_error = out.std_error_by_k.back();
  return out;
}

LimitLaw theoretical_law(const ProcessModel& model, const GarchThetaDefaults& garch) {
  return std::visit(
      Overloaded{[](const IidFrechet& m) { return LimitLaw(m.alpha, 1.0, m.scale); },
                 [](const MovingMaxima& m) { return LimitLaw(1.0, *std::max_element(m.coeffs.begin(), m.coeffs.end()), 1.0); },
                 [](const Armax& m) { return LimitLaw(1.0, 1.0 - m.c, 1.0 / (1.0 - m.c)); },
                 [&](const SquaredGarch& g) {
                   const auto est = garch_extremal_index(g.alpha1, g.beta1, garch.k_max, garch.trials, garch.seed);
                   return LimitLaw(est.alpha, std::clamp(est.estimate, 1e-12, 1.0), 1.0);
                 }},
      model.variant());
}

nlohmann::json to_json(const ProcessModel& model) {
  return std::visit(
      Overloaded{[](const IidFrechet& m) { return nlohmann::json{{"model", "iid"}, {"alpha", m.alpha}, {"scale", m.scale}}; },
                 [](const MovingMaxima& m) { return nlohmann::json{{"model", "mm"}, {"coeffs", m.coeffs}}; },
                 [](const Armax& m) { return nlohmann::json{{"model", "armax"}, {"c", m.c}}; },
                 [](const SquaredGarch& g) {
                   return nlohmann::json{{"model", "garch2"}, {"alpha0", g.alpha0}, {"alpha1", g.alpha1}, {"beta1", g.beta1}};
                 }},
      model.variant());
}

ProcessModel model_from_json(const nlohmann::json& j) {
  const auto kind = j.at("model").get<std::string>();
  if (kind == "iid") return ProcessModel::iid(j.value("alpha", 1.0), j.value("scale", 1.0));
  if (kind == "mm") return ProcessModel::moving_maxima(j.at("coeffs").get<std::vector<double>>());
  if (kind == "armax") return ProcessModel::armax(j.at("c").get<double>());
  if (kind == "garch2") {
    return ProcessModel::squared_garch(j.at("alpha0").get<double>(), j.at("alpha1").get<double>(), j.at("beta1").get<double>());
  }
  throw std::invalid_argument("unknown model '" + kind + "' (expected iid, mm, armax or garch2)");
}

}  // namespace maxstream
