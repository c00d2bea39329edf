#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxstream/models.hpp"
#include "maxstream/parallel.hpp"

namespace maxstream {

struct KsResult {
  double statistic = 0.0;
  std::size_t n = 0;
  double critical_1pct = 0.0;  // 1.628 / sqrt(n)
  bool pass = false;
};

/// One-sample KS statistic against exp(-theta x^{-alpha}). `threshold` <= 0
/// selects critical_1pct.
KsResult ks_against_frechet(std::span<const double> samples, double alpha, double theta, double threshold = 0.0);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  bool diagnostic = false;  // reported without a target
};

struct Target {
  double value = 0.0;
  std::string provenance;
  double tolerance = 0.0;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::string experiment;
  std::optional<ProcessModel> model;
  nlohmann::json params = nlohmann::json::object();
  std::map<std::string, Estimate> estimates;
  std::map<std::string, Target> targets;
  std::vector<Check> checks;
  std::uint64_t seed = 0;
  bool pass = true;
  double runtime_seconds = 0.0;

  void add_check(std::string name, bool ok, std::string detail);

  /// Byte-stable for fixed inputs; the runtime goes under "diagnostics" only when asked for.
  nlohmann::json to_json(bool include_runtime = false) const;
  /// name,estimate,target,std_error,pass with 6 significant digits.
  std::string to_csv() const;
};

struct MaxLimitOptions {
  double ks_threshold = 0.0;  // <= 0: 2 x 1.628 / sqrt(trials)
};

/// KS test of `trials` copies of M_n / a_n against the model's Fréchet limit.
VerificationReport verify_max_limit(const ProcessModel& model, std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                    const Executor& ex = Executor(), const MaxLimitOptions& opt = {});

struct FidiOptions {
  double tolerance = 0.02;
};

/// Empirical P(M_n(t_j) <= x_j for all j) against the extremal-process product.
VerificationReport verify_fidi(const ProcessModel& model, std::int64_t n, std::int64_t trials,
                               std::span<const double> times, std::span<const double> levels, std::uint64_t seed,
                               const Executor& ex = Executor(), const FidiOptions& opt = {});

struct OscProbeOptions {
  std::optional<double> j1_max;  // require P(osc_j1 >= eps) <= j1_max
  std::optional<double> j1_min;  // require P(osc_j1 >= eps) >= j1_min
};

/// Frequencies of osc_m1(M_n, delta) > eps and osc_j1(M_n, delta) > eps (and >= eps).
VerificationReport osc_exceedance_probe(const ProcessModel& model, std::int64_t n, std::int64_t trials, double delta,
                                        double eps, std::uint64_t seed, const Executor& ex = Executor(),
                                        const OscProbeOptions& opt = {});

struct J1FailureOptions {
  double a_tolerance = 0.005;
  double a_not_b_min = 0.01;
  double osc_slack = 0.002;
};

/// The two-coefficient moving maxima X_i = max{c0 Z_i, c1 Z_{i-1}} with the
/// events A (Z_{i'} > eps a_n, i' the argmax of Z_1..Z_{n-1}) and B (A plus a
/// second Z_j > lambda eps a_n, j in {0, ..., i'+1} \ {i'}, lambda = c0/(2 c1)).
/// Every trial in A \ B must have osc_j1(M_n, 2/n) >= eps min{c0/2, c1 - c0}.
/// Throws std::domain_error unless c1 > c0 > 0 and eps^2 (1 - e^{-1/eps}) > 1/lambda.
VerificationReport j1_failure_experiment(double c0, double c1, double eps, std::int64_t n, std::int64_t trials,
                                         std::uint64_t seed, const Executor& ex = Executor(),
                                         const J1FailureOptions& opt = {});

struct ThetaEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t events = 0;
};

inline constexpr std::int64_t kMinConditioningEvents = 100;

/// Rejection-sampled P(max(X_1..X_r) <= x | X_0 > x), x the marginal
/// `quantile`-quantile. Throws ResourceError below kMinConditioningEvents.
ThetaEstimate estimate_theta_conditional(const ProcessModel& model, int r, double quantile, std::int64_t trials,
                                         std::uint64_t seed, const Executor& ex = Executor());

/// estimate_theta_conditional over an (r, quantile) grid, targets from theoretical_law.
VerificationReport theta_conditional_report(const ProcessModel& model, std::span<const int> rs,
                                            std::span<const double> quantiles, std::int64_t trials,
                                            std::uint64_t seed, double tolerance = 0.05,
                                            const Executor& ex = Executor());

/// (#blocks with max > threshold) / (#values > threshold). The last block may be partial.
double estimate_theta_blocks(std::span<const double> sample, std::size_t block_len, double threshold);

/// ln(1 - K/k) / (r ln(1 - N/(k r))) over the k full blocks of length r, with
/// K exceeding blocks and N exceedances.
double estimate_theta_blocks_log(std::span<const double> sample, std::size_t block_len, double threshold);

struct PoissonClusterOptions {
  double mean_rel_tol = 0.15;
  double dispersion_lo = 0.8;
  double dispersion_hi = 1.2;
};

/// Per trial, the number of length-block_len blocks of X_1..X_n whose max exceeds u a_n;
/// mean and dispersion index against Poisson(theta u^{-alpha}).
VerificationReport poisson_cluster_check(const ProcessModel& model, std::int64_t n, double u, std::int64_t block_len,
                                         std::int64_t trials, std::uint64_t seed, const Executor& ex = Executor(),
                                         const PoissonClusterOptions& opt = {});

/// karamata_ratio(alpha, s, eps, n) against alpha / (s - alpha) for each s, relative tolerance rel_tol.
VerificationReport verify_karamata(double alpha, std::span<const double> s_values, double eps, std::int64_t n,
                                   double rel_tol = 0.02);

}  // namespace maxstream
