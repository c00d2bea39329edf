#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "maxstream/errors.hpp"
#include "oracles.hpp"
#include "maxstream/models.hpp"
#include "maxstream/verify.hpp"

using namespace maxstream;
using Catch::Approx;

namespace {

// Gamma(a + 1/2) = sqrt(pi) solved by bisection.
double gamma_tail_index_half() {
  double lo = 1.0, hi = 4.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (std::tgamma(mid + 0.5) < std::sqrt(std::numbers::pi) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> column(const ProcessModel& m, std::int64_t n, std::size_t index, int trials, std::uint64_t seed) {
  std::vector<double> out;
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int t = 0; t < trials; ++t) {
    RandomStream rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    generate_into(m, rng, xs);
    out.push_back(xs[index]);
  }
  return out;
}

// X_1 and X_{index+1} across independent paths.
std::pair<std::vector<double>, std::vector<double>> columns(const ProcessModel& m, std::int64_t n, std::size_t index,
                                                            int trials, std::uint64_t seed) {
  std::pair<std::vector<double>, std::vector<double>> out;
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int t = 0; t < trials; ++t) {
    RandomStream rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    generate_into(m, rng, xs);
    out.first.push_back(xs[0]);
    out.second.push_back(xs[index]);
  }
  return out;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("model construction invariants") {
  const auto mm = ProcessModel::moving_maxima({2, 3, 5});
  const auto* c = mm.get_if<MovingMaxima>();
  REQUIRE(c);
  CHECK(c->coeffs[0] == Approx(0.2));
  CHECK(c->coeffs[2] == Approx(0.5));
  CHECK_THROWS(ProcessModel::moving_maxima({0.0, 1.0}));
  CHECK_THROWS(ProcessModel::moving_maxima({1.0, 0.0}));
  CHECK_THROWS(ProcessModel::moving_maxima({1.0}));
  CHECK_THROWS(ProcessModel::armax(1.0));
  CHECK_THROWS(ProcessModel::armax(0.0));
  CHECK_THROWS(ProcessModel::squared_garch(1, 1.5, 0.9));
  CHECK_NOTHROW(ProcessModel::squared_garch(1, 0.3, 0.7));
  CHECK_THROWS(ProcessModel::iid(-1));
  CHECK(mm.name() == "mm");
}

TEST_CASE("generators on injected noise") {
  const std::vector<double> coeffs{0.2, 0.3, 0.5};
  const std::vector<double> noise{4, 2, 1};  // Z_{-1}, Z_0, Z_1
  const auto x = moving_maxima_from_noise(coeffs, noise);
  REQUIRE(x.size() == 1);
  CHECK(x[0] == Approx(2.0));
  const std::vector<double> z{1.0};
  CHECK(armax_from_noise(0.5, 3.0, z)[0] == Approx(1.5));
  CHECK(armax_truncation(0.5) == 40);
}

TEST_CASE("theoretical laws") {
  const auto mm = theoretical_law(ProcessModel::moving_maxima({0.2, 0.3, 0.5}));
  CHECK(mm.theta == Approx(0.5));
  CHECK(mm.alpha == 1.0);
  // interior permutation does not change theta
  CHECK(theoretical_law(ProcessModel::moving_maxima({0.2, 0.1, 0.4, 0.3})).theta ==
        theoretical_law(ProcessModel::moving_maxima({0.2, 0.4, 0.1, 0.3})).theta);
  const auto ar = theoretical_law(ProcessModel::armax(0.5));
  CHECK(ar.theta == Approx(0.5));
  CHECK(ar.alpha == 1.0);
  CHECK(theoretical_law(ProcessModel::iid(2.0)).theta == 1.0);
  CHECK(theoretical_law(ProcessModel::iid(2.0)).alpha == 2.0);
}

TEST_CASE("generation is deterministic") {
  for (const auto& m : {ProcessModel::iid(1.5), ProcessModel::moving_maxima({0.2, 0.3, 0.5}), ProcessModel::armax(0.7),
                        ProcessModel::squared_garch(1e-3, 0.2, 0.7)}) {
    const auto a = generate(m, 500, 17);
    const auto b = generate(m, 500, 17);
    CHECK(a == b);
    CHECK(a != generate(m, 500, 18));
    CHECK(std::all_of(a.begin(), a.end(), [](double v) { return v >= 0.0 && std::isfinite(v); }));
  }
  CHECK_THROWS_AS(generate(ProcessModel::iid(), 0, 1), std::domain_error);
}

TEST_CASE("marginals match their closed forms") {
  SECTION("moving maxima") {
    const auto m = ProcessModel::moving_maxima({0.2, 0.3, 0.5});
    const auto xs = column(m, 3, 0, 100'000, 1);
    CHECK(ks_against_frechet(xs, 1.0, 1.0).statistic < 0.006);
  }
  SECTION("armax") {
    const auto m = ProcessModel::armax(0.5);
    const auto xs = column(m, 1, 0, 100'000, 2);
    CHECK(ks_against_frechet(xs, 1.0, 2.0).statistic < 0.006);  // scale 1/(1-c) = 2
    CHECK(marginal_cdf(m, 3.0) == Approx(std::exp(-2.0 / 3.0)));
    CHECK(marginal_quantile(m, std::exp(-2.0 / 3.0)) == Approx(3.0));
  }
  SECTION("iid") {
    const auto m = ProcessModel::iid(2.0, 3.0);
    const auto xs = generate(m, 100'000, 3);
    std::vector<double> scaled;
    for (double x : xs) scaled.push_back(x / 3.0);
    CHECK(ks_against_frechet(scaled, 2.0, 1.0).statistic < 0.006);
  }
}

TEST_CASE("stationarity probe") {
  struct Case {
    ProcessModel model;
    int trials;
  };
  // GARCH trials each pay the burn-in, so that case runs fewer of them.
  for (const auto& [m, trials] : {Case{ProcessModel::moving_maxima({0.2, 0.3, 0.5}), 200'000},
                                  Case{ProcessModel::armax(0.5), 200'000},
                                  Case{ProcessModel::squared_garch(1e-3, 0.2, 0.7), 100'000}}) {
    const std::int64_t n = 200;
    const auto [first, middle] = columns(m, n, n / 2 - 1, trials, 4);
    CHECK(two_sample_ks(first, middle) < 0.01);
  }
}

TEST_CASE("normalizing constants") {
  const auto iid = ProcessModel::iid();
  CHECK(normalizer_an(iid, 1000) == Approx(1.0 / -std::log1p(-1e-3)));
  CHECK(1000 * (1.0 - marginal_cdf(iid, normalizer_an(iid, 1000))) == Approx(1.0).epsilon(1e-12));
  const auto ar = ProcessModel::armax(0.5);
  CHECK(marginal_cdf(ar, normalizer_an(ar, 10'000)) == Approx(1.0 - 1e-4).epsilon(1e-14));
  CHECK_THROWS_AS(normalizer_an(iid, 1), std::domain_error);
  CHECK_THROWS_AS(marginal_cdf(ProcessModel::squared_garch(1, 0.3, 0.7), 1.0), std::domain_error);
}

TEST_CASE("GARCH marginal quantile carries a bootstrap error") {
  const SquaredGarch g{1e-3, 0.2, 0.7};
  const auto q = garch_marginal_quantile(g, 0.99, {.samples = 200'000, .bootstrap_resamples = 20});
  CHECK(q.value > 0.0);
  CHECK(q.std_error > 0.0);
  CHECK(q.std_error < 0.2 * q.value);
  const auto again = garch_marginal_quantile(g, 0.99, {.samples = 200'000, .bootstrap_resamples = 20});
  CHECK(again.value == q.value);
  CHECK(again.std_error == q.std_error);
}

TEST_CASE("GARCH tail index") {
  CHECK(garch_tail_index(1, 0) == Approx(1.0).margin(1e-3));
  CHECK(garch_tail_index(0.3, 0.7) == Approx(1.0).margin(1e-3));
  const double half = garch_tail_index(0.5, 0);
  CHECK(half == Approx(gamma_tail_index_half()).margin(1e-4));
  CHECK(half == Approx(oracle::mc_tail_index_half()).margin(0.01));
  CHECK(half == Approx(2.365).margin(1e-3));
  // heavier tails as the multiplier spreads out
  CHECK(garch_tail_index(0.1, 0.85) > garch_tail_index(0.2, 0.75));
  CHECK_THROWS_AS(garch_tail_index(0.5, 0, {.alpha_max = 2.0}), ResourceError);
  CHECK_THROWS_AS(garch_tail_index(2.0, 0.5), std::domain_error);
}

TEST_CASE("GARCH extremal index") {
  const auto e = garch_extremal_index(0.3, 0.7, 40, 100'000, 1);
  REQUIRE(e.by_k.size() == 40);
  CHECK(e.alpha == Approx(1.0).margin(1e-3));
  for (double v : e.by_k) CHECK((v > 0.0 && v <= 1.0));
  CHECK(e.estimate == e.by_k.back());
  // the running max grows with k, so the estimates decrease with shrinking steps
  for (std::size_t k = 1; k < e.by_k.size(); ++k) CHECK(e.by_k[k] <= e.by_k[k - 1]);
  const double early = e.by_k[1] - e.by_k[2];
  const double late = e.by_k[38] - e.by_k[39];
  CHECK(late < early);
  CHECK(e.std_error > 0.0);
  CHECK(e.std_error < 0.05);

  // a multiplier concentrated near 1 behaves like ARMAX with c near 1: strong clustering
  const auto low = garch_extremal_index(0.05, 0.95, 40, 100'000, 1);
  CHECK(low.estimate < e.estimate);
}

TEST_CASE("model JSON") {
  for (const auto& m : {ProcessModel::iid(2.0, 1.5), ProcessModel::moving_maxima({0.2, 0.3, 0.5}), ProcessModel::armax(0.3),
                        ProcessModel::squared_garch(1, 0.3, 0.7)}) {
    const auto back = model_from_json(nlohmann::json::parse(to_json(m).dump()));
    CHECK(to_json(back) == to_json(m));
  }
  CHECK(model_from_json(nlohmann::json::parse(R"({"model": "iid", "alpha": 1})")).name() == "iid");
  CHECK_THROWS(model_from_json(nlohmann::json::parse(R"({"model": "ar"})")));
}
