#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "maxstream/maxima.hpp"
#include "maxstream/skorokhod.hpp"

using namespace maxstream;

namespace {

std::vector<double> random_sequence(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (double& x : xs) x = unif(gen) < 0.1 ? 0.0 : -1.0 / std::log(unif(gen));
  return xs;
}

}  // namespace

TEST_CASE("partial maxima examples") {
  const std::vector<double> xs{1, 3, 2};
  CHECK(partial_max_process(xs, 1.0) == StepFunction(0.0, {{1.0 / 3, 1.0}, {2.0 / 3, 3.0}}));
  CHECK(eval(partial_max_process(xs, 1.0), 1.0) == 3.0);
  const std::vector<double> one{5};
  CHECK(partial_max_process(one, 5.0) == StepFunction(0.0, {{1.0, 1.0}}));
  const std::vector<double> flat(7, 2.5);
  CHECK(partial_max_process(flat, 2.5) == StepFunction(0.0, {{1.0 / 7, 1.0}}));
  CHECK_THROWS_AS(partial_max_process(std::vector<double>{}, 1.0), std::domain_error);
  CHECK_THROWS_AS(partial_max_process(xs, 0.0), std::domain_error);
}

TEST_CASE("truncated maxima examples") {
  const std::vector<double> xs{1, 3, 2};
  CHECK(truncated_max_process(xs, 1.0, 2.0) == StepFunction(0.0, {{2.0 / 3, 3.0}}));
  CHECK(truncated_max_process(xs, 1.0, 3.0) == StepFunction::constant(0.0));
  CHECK(truncated_max_process(xs, 1.0, 1e-12) == partial_max_process(xs, 1.0));
}

TEST_CASE("time-space measure") {
  CHECK(time_space_measure(std::vector<double>{1, 3}, 1.0) == PointMeasure({{0.5, 1.0}, {1.0, 3.0}}));
  CHECK(time_space_measure(std::vector<double>{0, 2}, 2.0) == PointMeasure({{1.0, 1.0}}));
  CHECK(time_space_measure(std::vector<double>(9, 1.0), 1.0).size() == 9);
  const PointMeasure eta({{0.5, 3.0}, {0.25, 1.0}, {0.5, 2.0}});
  CHECK(to_json(eta).dump() == R"({"atoms":[[0.25,1.0],[0.5,2.0],[0.5,3.0]]})");
  CHECK(point_measure_from_json(to_json(eta)) == eta);
  CHECK_THROWS(PointMeasure({{1.5, 1.0}}));
  CHECK_THROWS(PointMeasure({{0.5, 0.0}}));
}

TEST_CASE("maximum functional") {
  const double u = 0.7;
  const PointMeasure two({{0.5, 2 * u}, {0.5, 3 * u}});
  CHECK(max_functional(two, u) == StepFunction(0.0, {{0.5, 3 * u}}));
  CHECK(max_functional(PointMeasure{}, u) == StepFunction::constant(0.0));
  CHECK(max_functional(PointMeasure({{0.2, 0.5}, {0.9, 0.7}}), u) == StepFunction::constant(0.0));
  CHECK(max_functional(PointMeasure({{0.2, 2.0}, {0.4, INFINITY}}), u) == StepFunction(0.0, {{0.2, 2.0}}));
}

TEST_CASE("maximum functional of the time-space measure is the truncated path") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> unif(0.05, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const auto xs = random_sequence(gen, 1 + i % 60);
    const double an = unif(gen), u = unif(gen);
    const auto direct = truncated_max_process(xs, an, u);
    const auto via = max_functional(time_space_measure(xs, an), u);
    REQUIRE(direct == via);
  }
}

TEST_CASE("partial maxima properties") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + i % 40;
    const auto xs = random_sequence(gen, n);
    auto ys = xs;
    for (double& y : ys) y *= unif(gen);
    const double an = unif(gen), u = unif(gen);
    const auto mx = partial_max_process(xs, an);
    CHECK(is_nondecreasing(mx));
    for (double delta : {0.01, 0.1, 0.5}) CHECK(osc_m1(mx, delta) == 0.0);
    double bound = 0.0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(xs[k] - ys[k]) / an);
    CHECK(sup_distance(mx, partial_max_process(ys, an)) <= bound * (1 + 1e-12));
    const auto tr = truncated_max_process(xs, an, u);
    CHECK(sup_distance(tr, mx) <= u);
    for (int k = 0; k <= 50; ++k) CHECK(eval(tr, k / 50.0) <= eval(mx, k / 50.0));
  }
}
