#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "maxstream/parallel.hpp"
#include "maxstream/regvar.hpp"
#include "maxstream/rng.hpp"

namespace maxstream {

struct IidFrechet {
  double alpha = 1.0;
  double scale = 1.0;
};

/// X_n = max_i c_i Z_{n-i} with unit Fréchet noise; coefficients sum to 1.
struct MovingMaxima {
  std::vector<double> coeffs;
  std::size_t order() const noexcept { return coeffs.size() - 1; }
};

/// X_n = max{c X_{n-1}, Z_n} with unit Fréchet noise.
struct Armax {
  double c = 0.5;
};

/// sigma_n^2 = alpha0 + (alpha1 Z_{n-1}^2 + beta1) sigma_{n-1}^2, output X_n^2 = sigma_n^2 Z_n^2.
struct SquaredGarch {
  double alpha0 = 1.0;
  double alpha1 = 0.3;
  double beta1 = 0.7;
};

class ProcessModel {
 public:
  using Variant = std::variant<IidFrechet, MovingMaxima, Armax, SquaredGarch>;

  static ProcessModel iid(double alpha = 1.0, double scale = 1.0);
  /// Rescales the coefficients to sum to 1; requires c_0 > 0 and c_m > 0.
  static ProcessModel moving_maxima(std::vector<double> coeffs);
  static ProcessModel armax(double c);
  /// Requires E ln(alpha1 Z^2 + beta1) < 0 (checked by quadrature).
  static ProcessModel squared_garch(double alpha0, double alpha1, double beta1);

  const Variant& variant() const noexcept { return v_; }
  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&v_);
  }
  /// "iid", "mm", "armax" or "garch2".
  std::string name() const;

 private:
  explicit ProcessModel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

inline constexpr std::int64_t kGarchBurnIn = 10'000;
inline constexpr double kArmaxTruncationTol = 1e-12;

/// Number of past noise terms used for the ARMAX initial value.
int armax_truncation(double c);

/// Length-n draw from the stationary law of the model.
std::vector<double> generate(const ProcessModel& model, std::int64_t n, std::uint64_t seed);
/// Same draw, written into `out` and consuming `rng`.
void generate_into(const ProcessModel& model, RandomStream& rng, std::span<double> out);

/// X_1..X_n from noise (Z_{1-m}, ..., Z_n) of length n + m.
std::vector<double> moving_maxima_from_noise(std::span<const double> coeffs, std::span<const double> noise);
/// X_1..X_n from X_0 and noise (Z_1, ..., Z_n).
std::vector<double> armax_from_noise(double c, double x0, std::span<const double> noise);

/// P(X_1 <= x) for the closed-form marginals; throws std::domain_error for GARCH.
double marginal_cdf(const ProcessModel& model, double x);

struct QuantileEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct GarchQuantileOptions {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0x6a7c4e11;
  int bootstrap_resamples = 50;
  std::int64_t bootstrap_block = 1000;
};

/// Monte Carlo p-quantile of the stationary X_1^2 from one long path, with a
/// moving-block bootstrap standard error. Memoized per (parameters, options, p).
QuantileEstimate garch_marginal_quantile(const SquaredGarch& g, double p, const GarchQuantileOptions& opt = {});

/// p-quantile of the marginal; exact for the closed-form models.
double marginal_quantile(const ProcessModel& model, double p);

struct GarchTailOptions {
  int quadrature_nodes = 200;
  double alpha_max = 50.0;
  double tol = 1e-6;
};

/// The positive root of E[(alpha1 Z^2 + beta1)^a] = 1, Z standard normal.
double garch_tail_index(double alpha1, double beta1, const GarchTailOptions& opt = {});

struct GarchThetaEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double alpha = 0.0;
  std::vector<double> by_k;         // by_k[k-1]: estimate truncated at k
  std::vector<double> std_error_by_k;
};

/// Monte Carlo value of
///   E(|Z_1|^{2a} - max_{j=2..k+1} |Z_j^2 prod_{i=1}^{j}(alpha1 Z_{i-1}^2 + beta1)|^a)_+ / E|Z_1|^{2a}
/// for k = 1..k_max, with a = garch_tail_index(alpha1, beta1).
GarchThetaEstimate garch_extremal_index(double alpha1, double beta1, int k_max, std::int64_t trials,
                                        std::uint64_t seed, const Executor& ex = Executor());

struct GarchThetaDefaults {
  int k_max = 100;
  std::int64_t trials = 100'000;
  std::uint64_t seed = 0;
};

LimitLaw theoretical_law(const ProcessModel& model, const GarchThetaDefaults& garch = {});

nlohmann::json to_json(const ProcessModel& model);
ProcessModel model_from_json(const nlohmann::json& j);

}  // namespace maxstream
