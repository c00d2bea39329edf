#include "maxstream/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "format.hpp"
#include "maxstream/errors.hpp"
#include "maxstream/extremal.hpp"
#include "maxstream/maxima.hpp"
#include "maxstream/numerics.hpp"
#include "maxstream/skorokhod.hpp"

namespace maxstream {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double binomial_se(double p, std::int64_t n) { return n > 0 ? std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n)) : 0.0; }

// Scratch buffer reused across the trials a worker thread runs.
std::span<double> scratch(std::size_t n) {
  thread_local std::vector<double> buf;
  buf.resize(n);
  return buf;
}

void require_sizes(std::int64_t n, std::int64_t trials) {
  if (n < 1 || trials < 1) throw std::domain_error("n and trials must be positive");
}

}  // namespace

KsResult ks_against_frechet(std::span<const double> samples, double alpha, double theta, double threshold) {
  if (samples.empty()) throw std::domain_error("ks_against_frechet: empty sample");
  std::vector<double> xs(samples.begin(), samples.end());
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = frechet_cdf(alpha, theta, xs[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  KsResult r;
  r.statistic = d;
  r.n = xs.size();
  r.critical_1pct = 1.628 / std::sqrt(n);
  r.pass = d < (threshold > 0.0 ? threshold : r.critical_1pct);
  return r;
}

void VerificationReport::add_check(std::string name, bool ok, std::string detail) {
  pass = pass && ok;
  checks.push_back({std::move(name), ok, std::move(detail)});
}

nlohmann::json VerificationReport::to_json(bool include_runtime) const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["model"] = model ? maxstream::to_json(*model) : nlohmann::json();
  j["params"] = params;
  j["seed"] = seed;
  auto& est = j["estimates"] = nlohmann::json::object();
  for (const auto& [name, e] : estimates) {
    est[name] = {{"value", e.value}, {"std_error", e.std_error}, {"diagnostic", e.diagnostic}};
  }
  auto& tgt = j["targets"] = nlohmann::json::object();
  for (const auto& [name, t] : targets) {
    tgt[name] = {{"value", t.value}, {"provenance", t.provenance}, {"tolerance", t.tolerance}};
  }
  auto& chk = j["checks"] = nlohmann::json::array();
  for (const Check& c : checks) chk.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["pass"] = pass;
  if (include_runtime) j["diagnostics"] = {{"runtime_seconds", runtime_seconds}};
  return j;
}

std::string VerificationReport::to_csv() const {
  std::string out = "name,estimate,target,std_error,pass\n";
  for (const auto& [name, e] : estimates) {
    out += name + ',' + detail::sig6(e.value) + ',';
    if (auto t = targets.find(name); t != targets.end()) out += detail::sig6(t->second.value);
    out += ',' + detail::sig6(e.std_error) + ',';
    auto c = std::find_if(checks.begin(), checks.end(), [&](const Check& k) { return k.name == name; });
    out += c != checks.end() ? (c->pass ? "true" : "false") : (e.diagnostic ? "diagnostic" : "");
    out += '\n';
  }
  out += std::string("overall,,,,") + (pass ? "true" : "false") + '\n';
  return out;
}

VerificationReport verify_max_limit(const ProcessModel& model, std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                    const Executor& ex, const MaxLimitOptions& opt) {
  const auto t0 = Clock::now();
  if (n < 100 || trials < 100) throw std::domain_error("verify_max_limit: need n >= 100 and trials >= 100");
  const LimitLaw law = theoretical_law(model);
  const double an = normalizer_an(model, n);
  const auto maxima = ex.map<double>(static_cast<std::size_t>(trials), [&](std::size_t i) {
    RandomStream rng(derive_seed(seed, i));
    auto xs = scratch(static_cast<std::size_t>(n));
    generate_into(model, rng, xs);
    return *std::max_element(xs.begin(), xs.end()) / an;
  });
  const double threshold = opt.ks_threshold > 0.0 ? opt.ks_threshold : 2.0 * 1.628 / std::sqrt(static_cast<double>(trials));
  const KsResult ks = ks_against_frechet(maxima, law.alpha, law.theta, threshold);

  VerificationReport rep;
  rep.experiment = "max-limit";
  rep.model = model;
  rep.seed = seed;
  rep.params = {{"n", n}, {"trials", trials}, {"ks_threshold", threshold}, {"alpha", law.alpha}, {"theta", law.theta}};
  rep.estimates["ks_statistic"] = {ks.statistic, 0.0, false};
  rep.targets["ks_statistic"] = {0.0, "Frechet limit exp(-theta x^-alpha) of M_n/a_n", threshold};
  rep.estimates["ks_critical_1pct"] = {ks.critical_1pct, 0.0, true};
  std::vector<double> sorted = maxima;
  for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const std::string name = fmt("quantile_%.2f", p);
    rep.estimates[name] = {empirical_quantile(sorted, p), 0.0, false};
    rep.targets[name] = {frechet_quantile(law.alpha, law.theta, p), "limit law quantile", 0.0};
  }
  rep.add_check("ks_statistic", ks.pass, "KS " + detail::sig6(ks.statistic) + " < " + detail::sig6(threshold));
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

VerificationReport verify_fidi(const ProcessModel& model, std::int64_t n, std::int64_t trials,
                               std::span<const double> times, std::span<const double> levels, std::uint64_t seed,
                               const Executor& ex, const FidiOptions& opt) {
  const auto t0 = Clock::now();
  if (n < 100 || trials < 100) throw std::domain_error("verify_fidi: need n >= 100 and trials >= 100");
  const LimitLaw law = theoretical_law(model);
  const double target = extremal_fidi_prob(law.alpha, law.theta, times, levels);
  const double an = normalizer_an(model, n);
  const auto hits = ex.map<char>(static_cast<std::size_t>(trials), [&](std::size_t i) {
    RandomStream rng(derive_seed(seed, i));
    auto xs = scratch(static_cast<std::size_t>(n));
    generate_into(model, rng, xs);
    const StepFunction path = partial_max_process(xs, an);
    for (std::size_t j = 0; j < times.size(); ++j) {
      if (eval(path, times[j]) > levels[j]) return char{0};
    }
    return char{1};
  });
  const auto count = std::count(hits.begin(), hits.end(), char{1});
  const double p = static_cast<double>(count) / static_cast<double>(trials);

  VerificationReport rep;
  rep.experiment = "fidi";
  rep.model = model;
  rep.seed = seed;
  rep.params = {{"n", n},
                {"trials", trials},
                {"times", std::vector<double>(times.begin(), times.end())},
                {"levels", std::vector<double>(levels.begin(), levels.end())},
                {"tolerance", opt.tolerance},
                {"alpha", law.alpha},
                {"theta", law.theta}};
  rep.estimates["joint_probability"] = {p, binomial_se(p, trials), false};
  rep.targets["joint_probability"] = {target, "extremal process finite-dimensional product", opt.tolerance};
  rep.add_check("joint_probability", std::abs(p - target) <= opt.tolerance,
                "|" + detail::sig6(p) + " - " + detail::sig6(target) + "| <= " + detail::sig6(opt.tolerance));
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

VerificationReport osc_exceedance_probe(const ProcessModel& model, std::int64_t n, std::int64_t trials, double delta,
                                        double eps, std::uint64_t seed, const Executor& ex,
                                        const OscProbeOptions& opt) {
  const auto t0 = Clock::now();
  require_sizes(n, trials);
  if (!(delta > 0.0) || !(eps > 0.0)) throw std::domain_error("osc_exceedance_probe: delta and eps must be positive");
  const double an = normalizer_an(model, std::max<std::int64_t>(n, 2));
  struct Osc {
    double m1 = 0.0, j1 = 0.0;
  };
  const auto osc = ex.map<Osc>(static_cast<std::size_t>(trials), [&](std::size_t i) {
    RandomStream rng(derive_seed(seed, i));
    auto xs = scratch(static_cast<std::size_t>(n));
    generate_into(model, rng, xs);
    const StepFunction path = partial_max_process(xs, an);
    return Osc{osc_m1(path, delta), osc_j1(path, delta)};
  });
  std::int64_t m1_gt = 0, j1_gt = 0, j1_ge = 0;
  for (const Osc& o : osc) {
    m1_gt += o.m1 > eps;
    j1_gt += o.j1 > eps;
    j1_ge += o.j1 >= eps;
  }
  const auto nt = static_cast<double>(trials);
  const double p_m1 = static_cast<double>(m1_gt) / nt;
  const double p_j1 = static_cast<double>(j1_gt) / nt;
  const double p_j1_ge = static_cast<double>(j1_ge) / nt;

  VerificationReport rep;
  rep.experiment = "osc-probe";
  rep.model = model;
  rep.seed = seed;
  rep.params = {{"n", n}, {"trials", trials}, {"delta", delta}, {"eps", eps}};
  if (opt.j1_max) rep.params["j1_max"] = *opt.j1_max;
  if (opt.j1_min) rep.params["j1_min"] = *opt.j1_min;
  rep.estimates["p_osc_m1_gt_eps"] = {p_m1, binomial_se(p_m1, trials), false};
  rep.targets["p_osc_m1_gt_eps"] = {0.0, "partial maxima paths are monotone, so the M1 oscillation vanishes", 0.0};
  rep.estimates["p_osc_j1_gt_eps"] = {p_j1, binomial_se(p_j1, trials), true};
  rep.estimates["p_osc_j1_ge_eps"] = {p_j1_ge, binomial_se(p_j1_ge, trials), !(opt.j1_max || opt.j1_min)};
  rep.add_check("p_osc_m1_gt_eps", m1_gt == 0, std::to_string(m1_gt) + " paths with osc_m1 > eps");
  if (opt.j1_max) {
    rep.targets["p_osc_j1_ge_eps"] = {*opt.j1_max, "upper bound", 0.0};
    rep.add_check("p_osc_j1_ge_eps", p_j1_ge <= *opt.j1_max, detail::sig6(p_j1_ge) + " <= " + detail::sig6(*opt.j1_max));
  }
  if (opt.j1_min) {
    rep.targets["p_osc_j1_ge_eps"] = {*opt.j1_min, "lower bound", 0.0};
    rep.add_check("p_osc_j1_ge_eps_min", p_j1_ge >= *opt.j1_min,
                  detail::sig6(p_j1_ge) + " >= " + detail::sig6(*opt.j1_min));
  }
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

VerificationReport j1_failure_experiment(double c0, double c1, double eps, std::int64_t n, std::int64_t trials,
                                         std::uint64_t seed, const Executor& ex, const J1FailureOptions& opt) {
  const auto t0 = Clock::now();
  if (!(c0 > 0.0) || !(c1 > c0)) throw std::domain_error("j1_failure_experiment: requires c1 > c0 > 0");
  if (n < 3) throw std::domain_error("j1_failure_experiment: n must be at least 3");
  require_sizes(n, trials);
  const double lambda = c0 / (2.0 * c1);
  const double p_a_limit = -std::expm1(-1.0 / eps);
  if (!(eps > 0.0) || !(eps * eps * p_a_limit > 1.0 / lambda)) {
    throw std::domain_error("j1_failure_experiment: precondition eps^2 (1 - exp(-1/eps)) > 1/lambda fails (" +
                            detail::sig6(eps * eps * p_a_limit) + " <= " + detail::sig6(1.0 / lambda) + ")");
  }
  const double b_bound = 1.0 / (lambda * eps * eps);
  const double threshold = eps * std::min(c0 / 2.0, c1 - c0);
  const double an = 1.0 / -std::log1p(-1.0 / static_cast<double>(n));
  const auto nn = static_cast<std::size_t>(n);

  struct Trial {
    bool a = false, b = false;
    double osc = 0.0;
  };
  const auto out = ex.map<Trial>(static_cast<std::size_t>(trials), [&](std::size_t t) {
    RandomStream rng(derive_seed(seed, t));
    thread_local std::vector<double> z, xs;
    z.resize(nn + 1);
    xs.resize(nn);
    for (double& v : z) v = sample_unit_frechet(rng);
    for (std::size_t i = 1; i <= nn; ++i) xs[i - 1] = std::max(c0 * z[i], c1 * z[i - 1]);
    const std::size_t ip = static_cast<std::size_t>(std::max_element(z.begin() + 1, z.begin() + static_cast<std::ptrdiff_t>(nn)) - z.begin());
    Trial r;
    r.a = z[ip] > eps * an;
    if (r.a) {
      for (std::size_t j = 0; j <= ip + 1 && !r.b; ++j) r.b = j != ip && z[j] > lambda * eps * an;
    }
    r.osc = osc_j1(partial_max_process(xs, an), 2.0 / static_cast<double>(n));
    return r;
  });

  std::int64_t a = 0, b = 0, anb = 0, osc_hit = 0, violations = 0;
  double min_osc_on_anb = INFINITY;
  for (const Trial& r : out) {
    a += r.a;
    b += r.b;
    osc_hit += r.osc >= threshold;
    if (r.a && !r.b) {
      ++anb;
      violations += !(r.osc >= threshold);
      min_osc_on_anb = std::min(min_osc_on_anb, r.osc);
    }
  }
  const auto nt = static_cast<double>(trials);
  const double pa = static_cast<double>(a) / nt, pb = static_cast<double>(b) / nt;
  const double panb = static_cast<double>(anb) / nt, posc = static_cast<double>(osc_hit) / nt;

  VerificationReport rep;
  rep.experiment = "j1-failure";
  rep.model = ProcessModel::moving_maxima({c0, c1});
  rep.seed = seed;
  rep.params = {{"c0", c0},
                {"c1", c1},
                {"eps", eps},
                {"n", n},
                {"trials", trials},
                {"lambda", lambda},
                {"osc_threshold", threshold},
                {"a_tolerance", opt.a_tolerance},
                {"a_not_b_min", opt.a_not_b_min},
                {"osc_slack", opt.osc_slack}};
  rep.estimates["p_a"] = {pa, binomial_se(pa, trials), false};
  rep.targets["p_a"] = {p_a_limit, "limit 1 - exp(-1/eps)", opt.a_tolerance};
  rep.estimates["p_b"] = {pb, binomial_se(pb, trials), false};
  rep.targets["p_b"] = {b_bound, "limsup upper bound 1/(lambda eps^2)", 0.0};
  rep.estimates["p_a_not_b"] = {panb, binomial_se(panb, trials), false};
  rep.targets["p_a_not_b"] = {p_a_limit - b_bound, "liminf lower bound 1 - exp(-1/eps) - 1/(lambda eps^2)", 0.0};
  rep.estimates["p_osc_j1_ge_threshold"] = {posc, binomial_se(posc, trials), false};
  rep.targets["p_osc_j1_ge_threshold"] = {panb, "at least the frequency of A \\ B", opt.osc_slack};
  rep.estimates["violations_on_a_not_b"] = {static_cast<double>(violations), 0.0, false};
  rep.targets["violations_on_a_not_b"] = {0.0, "osc_j1(M_n, 2/n) >= eps min{c0/2, c1 - c0} on A \\ B", 0.0};
  rep.estimates["min_osc_j1_on_a_not_b"] = {anb > 0 ? min_osc_on_anb : 0.0, 0.0, true};

  rep.add_check("p_a", std::abs(pa - p_a_limit) <= opt.a_tolerance,
                "|" + detail::sig6(pa) + " - " + detail::sig6(p_a_limit) + "| <= " + detail::sig6(opt.a_tolerance));
  rep.add_check("p_a_not_b", panb >= opt.a_not_b_min && panb <= pa,
                detail::sig6(panb) + " >= " + detail::sig6(opt.a_not_b_min));
  rep.add_check("p_osc_j1_ge_threshold", posc >= panb - opt.osc_slack,
                detail::sig6(posc) + " >= " + detail::sig6(panb) + " - " + detail::sig6(opt.osc_slack));
  rep.add_check("violations_on_a_not_b", violations == 0, std::to_string(violations) + " of " + std::to_string(anb));
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Tally {
  std::int64_t events = 0;
  std::int64_t successes = 0;
};

// One rejection trial: returns {X_0 > x, X_1..X_r <= x}.
Tally conditional_trial(const ProcessModel::Variant& v, int r, double x, RandomStream& rng) {
  return std::visit(
      Overloaded{
          [&](const IidFrechet& m) -> Tally {
            if (!(sample_frechet(rng, m.alpha, m.scale) > x)) return {};
            for (int k = 0; k < r; ++k) {
              if (sample_frechet(rng, m.alpha, m.scale) > x) return {1, 0};
            }
            return {1, 1};
          },
          [&](const Armax& m) -> Tally {
            double cur = frechet_from_uniform(rng.uniform(), 1.0, 1.0 / (1.0 - m.c));
            if (!(cur > x)) return {};
            for (int k = 0; k < r; ++k) {
              cur = std::max(m.c * cur, sample_unit_frechet(rng));
              if (cur > x) return {1, 0};
            }
            return {1, 1};
          },
          [&](const MovingMaxima& m) -> Tally {
            const std::size_t width = m.coeffs.size();
            thread_local std::vector<double> ring;
            ring.resize(width);
            // ring[(head - i) mod width] = Z_{t-i}
            for (std::size_t k = 0; k < width; ++k) ring[k] = sample_unit_frechet(rng);
            std::size_t head = width - 1;
            auto current = [&] {
              double v = 0.0;
              for (std::size_t i = 0; i < width; ++i) v = std::max(v, m.coeffs[i] * ring[(head + width - i) % width]);
              return v;
            };
            if (!(current() > x)) return {};
            for (int k = 0; k < r; ++k) {
              head = (head + 1) % width;
              ring[head] = sample_unit_frechet(rng);
              if (current() > x) return {1, 0};
            }
            return {1, 1};
          },
          [&](const SquaredGarch&) -> Tally { throw std::logic_error("GARCH uses chained windows"); }},
      v);
}

}  // namespace

ThetaEstimate estimate_theta_conditional(const ProcessModel& model, int r, double quantile, std::int64_t trials,
                                         std::uint64_t seed, const Executor& ex) {
  if (r < 1) throw std::domain_error("estimate_theta_conditional: r must be at least 1");
  if (!(quantile > 0.0 && quantile < 1.0)) throw std::domain_error("estimate_theta_conditional: quantile must lie in (0, 1)");
  if (trials < 1) throw std::domain_error("estimate_theta_conditional: trials must be positive");
  const double x = marginal_quantile(model, quantile);
  const auto total = static_cast<std::size_t>(trials);
  std::vector<Tally> chunks;

  if (model.get_if<SquaredGarch>()) {
    // Consecutive windows along one chain per chunk; each position is a candidate X_0.
    constexpr std::size_t kChain = 100'000;
    chunks = map_chunks<Tally>(ex, total, kChain, [&](std::size_t begin, std::size_t end) {
      RandomStream rng(derive_seed(seed, begin / kChain));
      std::vector<double> xs(end - begin + static_cast<std::size_t>(r));
      generate_into(model, rng, xs);
      Tally t;
      for (std::size_t i = 0; i < end - begin; ++i) {
        if (!(xs[i] > x)) continue;
        ++t.events;
        t.successes += std::all_of(xs.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                   xs.begin() + static_cast<std::ptrdiff_t>(i) + 1 + r, [&](double v) { return v <= x; });
      }
      return t;
    });
  } else {
    chunks = map_chunks<Tally>(ex, total, 1 << 14, [&](std::size_t begin, std::size_t end) {
      Tally t;
      for (std::size_t i = begin; i < end; ++i) {
        RandomStream rng(derive_seed(seed, i));
        const Tally one = conditional_trial(model.variant(), r, x, rng);
        t.events += one.events;
        t.successes += one.successes;
      }
      return t;
    });
  }

  Tally sum;
  for (const Tally& c : chunks) {
    sum.events += c.events;
    sum.successes += c.successes;
  }
  if (sum.events < kMinConditioningEvents) {
    throw ResourceError("estimate_theta_conditional: only " + std::to_string(sum.events) +
                        " conditioning events (need " + std::to_string(kMinConditioningEvents) +
                        "); increase trials");
  }
  ThetaEstimate est;
  est.events = sum.events;
  est.value = static_cast<double>(sum.successes) / static_cast<double>(sum.events);
  est.std_error = binomial_se(est.value, sum.events);
  return est;
}

VerificationReport theta_conditional_report(const ProcessModel& model, std::span<const int> rs,
                                            std::span<const double> quantiles, std::int64_t trials,
                                            std::uint64_t seed, double tolerance, const Executor& ex) {
  const auto t0 = Clock::now();
  if (rs.empty() || quantiles.empty()) throw std::domain_error("theta_conditional_report: empty grid");
  const LimitLaw law = theoretical_law(model);
  const int r_max = *std::max_element(rs.begin(), rs.end());
  const double q_max = *std::max_element(quantiles.begin(), quantiles.end());

  VerificationReport rep;
  rep.experiment = "theta-conditional";
  rep.model = model;
  rep.seed = seed;
  rep.params = {{"r", std::vector<int>(rs.begin(), rs.end())},
                {"quantile", std::vector<double>(quantiles.begin(), quantiles.end())},
                {"trials", trials},
                {"tolerance", tolerance}};
  for (int r : rs) {
    for (double q : quantiles) {
      const ThetaEstimate e = estimate_theta_conditional(model, r, q, trials, seed, ex);
      const std::string name = "theta_r" + std::to_string(r) + "_q" + fmt("%g", q);
      rep.estimates[name] = {e.value, e.std_error, false};
      rep.estimates[name + "_events"] = {static_cast<double>(e.events), 0.0, true};
      rep.targets[name] = {law.theta, "extremal index of the model", tolerance};
      if (r == r_max && q == q_max) {
        rep.add_check(name, std::abs(e.value - law.theta) <= tolerance,
                      "|" + detail::sig6(e.value) + " - " + detail::sig6(law.theta) + "| <= " + detail::sig6(tolerance));
      }
    }
  }
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

double estimate_theta_blocks(std::span<const double> sample, std::size_t block_len, double threshold) {
  if (block_len < 1) throw std::domain_error("estimate_theta_blocks: block_len must be at least 1");
  if (!(threshold > 0.0)) throw std::domain_error("estimate_theta_blocks: threshold must be positive");
  std::int64_t blocks = 0, exceedances = 0;
  for (std::size_t start = 0; start < sample.size(); start += block_len) {
    const std::size_t end = std::min(sample.size(), start + block_len);
    const auto hits = std::count_if(sample.begin() + static_cast<std::ptrdiff_t>(start),
                                    sample.begin() + static_cast<std::ptrdiff_t>(end), [&](double v) { return v > threshold; });
    exceedances += hits;
    blocks += hits > 0;
  }
  if (exceedances == 0) throw std::domain_error("estimate_theta_blocks: no exceedances of the threshold");
  return static_cast<double>(blocks) / static_cast<double>(exceedances);
}

double estimate_theta_blocks_log(std::span<const double> sample, std::size_t block_len, double threshold) {
  if (block_len < 1) throw std::domain_error("estimate_theta_blocks_log: block_len must be at least 1");
  if (!(threshold > 0.0)) throw std::domain_error("estimate_theta_blocks_log: threshold must be positive");
  const std::size_t k = sample.size() / block_len;
  std::int64_t blocks = 0, exceedances = 0;
  for (std::size_t b = 0; b < k; ++b) {
    const auto first = sample.begin() + static_cast<std::ptrdiff_t>(b * block_len);
    const auto hits = std::count_if(first, first + static_cast<std::ptrdiff_t>(block_len), [&](double v) { return v > threshold; });
    exceedances += hits;
    blocks += hits > 0;
  }
  if (exceedances == 0) throw std::domain_error("estimate_theta_blocks_log: no exceedances of the threshold");
  const auto n_used = static_cast<double>(k * block_len);
  if (static_cast<std::size_t>(blocks) == k || static_cast<double>(exceedances) == n_used) {
    throw std::domain_error("estimate_theta_blocks_log: every block exceeds the threshold");
  }
  return std::log1p(-static_cast<double>(blocks) / static_cast<double>(k)) /
         (static_cast<double>(block_len) * std::log1p(-static_cast<double>(exceedances) / n_used));
}

VerificationReport poisson_cluster_check(const ProcessModel& model, std::int64_t n, double u, std::int64_t block_len,
                                         std::int64_t trials, std::uint64_t seed, const Executor& ex,
                                         const PoissonClusterOptions& opt) {
  const auto t0 = Clock::now();
  require_sizes(n, trials);
  if (!(u > 0.0) || block_len < 1) throw std::domain_error("poisson_cluster_check: need u > 0 and block_len >= 1");
  const LimitLaw law = theoretical_law(model);
  const double level = u * normalizer_an(model, std::max<std::int64_t>(n, 2));
  const auto counts = ex.map<double>(static_cast<std::size_t>(trials), [&](std::size_t i) {
    RandomStream rng(derive_seed(seed, i));
    auto xs = scratch(static_cast<std::size_t>(n));
    generate_into(model, rng, xs);
    std::int64_t c = 0;
    for (std::size_t start = 0; start < xs.size(); start += static_cast<std::size_t>(block_len)) {
      const auto end = std::min(xs.size(), start + static_cast<std::size_t>(block_len));
      c += std::any_of(xs.begin() + static_cast<std::ptrdiff_t>(start), xs.begin() + static_cast<std::ptrdiff_t>(end),
                       [&](double v) { return v > level; });
    }
    return static_cast<double>(c);
  });
  const MeanVar mv = mean_var(counts);
  const double target = law.theta * std::pow(u, -law.alpha);
  const double dispersion = mv.mean > 0.0 ? mv.variance / mv.mean : 0.0;

  VerificationReport rep;
  rep.experiment = "cluster-poisson";
  rep.model = model;
  rep.seed = seed;
  rep.params = {{"n", n},
                {"u", u},
                {"block_len", block_len},
                {"trials", trials},
                {"mean_rel_tol", opt.mean_rel_tol},
                {"dispersion_range", {opt.dispersion_lo, opt.dispersion_hi}}};
  rep.estimates["mean_count"] = {mv.mean, std::sqrt(mv.variance / static_cast<double>(trials)), false};
  rep.targets["mean_count"] = {target, "Poisson intensity theta u^-alpha", opt.mean_rel_tol * target};
  rep.estimates["variance_count"] = {mv.variance, 0.0, true};
  rep.estimates["dispersion_index"] = {dispersion, 0.0, false};
  rep.targets["dispersion_index"] = {1.0, "variance equals mean for a Poisson count", 0.0};
  rep.add_check("mean_count", std::abs(mv.mean - target) <= opt.mean_rel_tol * target,
                "|" + detail::sig6(mv.mean) + " - " + detail::sig6(target) + "| <= " + detail::sig6(opt.mean_rel_tol * target));
  rep.add_check("dispersion_index", dispersion >= opt.dispersion_lo && dispersion <= opt.dispersion_hi,
                detail::sig6(dispersion) + " in [" + detail::sig6(opt.dispersion_lo) + ", " + detail::sig6(opt.dispersion_hi) + "]");
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

VerificationReport verify_karamata(double alpha, std::span<const double> s_values, double eps, std::int64_t n,
                                   double rel_tol) {
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.experiment = "karamata";
  rep.params = {{"alpha", alpha},
                {"s", std::vector<double>(s_values.begin(), s_values.end())},
                {"eps", eps},
                {"n", n},
                {"rel_tol", rel_tol}};
  for (double s : s_values) {
    const double ratio = karamata_ratio(alpha, s, eps, n);
    const double target = alpha / (s - alpha);
    const std::string name = "ratio_s" + fmt("%g", s);
    rep.estimates[name] = {ratio, 0.0, false};
    rep.targets[name] = {target, "alpha / (s - alpha)", rel_tol * target};
    rep.add_check(name, std::abs(ratio - target) <= rel_tol * target,
                  "|" + detail::sig6(ratio) + " - " + detail::sig6(target) + "| <= " + detail::sig6(rel_tol * target));
  }
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

}  // namespace maxstream
