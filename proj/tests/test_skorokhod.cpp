#include <catch_amalgamated.hpp>

#include <random>

#include "maxstream/errors.hpp"
#include "maxstream/skorokhod.hpp"
#include "oracles.hpp"

using namespace maxstream;
using Catch::Approx;

namespace {

StepFunction shifted(int n) { return StepFunction(0.0, {{0.5 - 1.0 / n, 0.5}, {0.5, 1.0}}); }

}  // namespace

TEST_CASE("segment gap") {
  CHECK(segment_gap(0, 0.5, 1) == 0.0);
  CHECK(segment_gap(0, 2, 1) == 1.0);
  CHECK(segment_gap(1, 0.5, 0) == 0.0);
  CHECK(segment_gap(1, -1, 0) == 1.0);
}

TEST_CASE("oscillation examples") {
  const StepFunction up_down(0.0, {{1.0 / 3, 1.0}, {2.0 / 3, 0.0}});
  CHECK(osc_m1(up_down, 1.0) == 1.0);
  CHECK(osc_m1(StepFunction(0.0, {{0.2, 1.0}, {0.8, 2.0}}), 0.5) == 0.0);
  CHECK(osc_j1(StepFunction::indicator(0.4), 0.7) == 0.0);
  CHECK(osc_j1(StepFunction(0.0, {{0.4, 0.3}, {0.45, 1.3}}), 0.1) == Approx(0.3));
  CHECK(osc_j1(StepFunction::constant(2.0), 0.5) == 0.0);
  CHECK(osc_m1(StepFunction(0.0, {{0.1, 1.0}, {0.5, 2.0}, {0.9, 5.0}}), 1.0) == 0.0);
  CHECK_THROWS_AS(osc_m1(up_down, 0.0), std::domain_error);
  CHECK_THROWS_AS(osc_j1(up_down, -1.0), std::domain_error);
}

TEST_CASE("oscillations match a dense-grid brute force") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unif(0.02, 1.0);
  for (int i = 0; i < 400; ++i) {
    const auto f = oracle::random_step(gen, 5, i % 2 == 0);
    const double delta = unif(gen);
    const auto brute = oracle::brute_oscillations(f, delta);
    CHECK(osc_m1(f, delta) == Approx(brute.m1).margin(1e-12));
    CHECK(osc_j1(f, delta) == Approx(brute.j1).margin(1e-12));
  }
}

TEST_CASE("oscillation properties on random paths") {
  std::mt19937_64 gen(77);
  for (int i = 0; i < 500; ++i) {
    const auto f = oracle::random_step(gen, 8, i % 3 == 0);
    double prev_m1 = 0.0, prev_j1 = 0.0;
    for (double delta : {0.01, 0.05, 0.1, 0.3, 0.7, 1.0}) {
      const double m1 = osc_m1(f, delta), j1 = osc_j1(f, delta);
      CHECK(m1 <= j1);
      CHECK(m1 >= prev_m1);
      CHECK(j1 >= prev_j1);
      prev_m1 = m1;
      prev_j1 = j1;
    }
    const auto mono = oracle::random_step(gen, 8, i % 2 == 0, true);
    CHECK(osc_m1(mono, 1.0) == 0.0);
  }
}

TEST_CASE("M1 and J1 distance examples") {
  const auto x = StepFunction::indicator(0.5);
  CHECK(d_m1(x, x) == 0.0);
  CHECK(d_j1(x, x) == 0.0);
  CHECK(d_m1(x, StepFunction::constant(0.0)) == Approx(1.0).margin(1e-6));
  for (double h : {0.05, 0.2, 0.45}) {
    CHECK(d_j1(x, StepFunction::indicator(0.5 + h)) == Approx(h).margin(1e-6));
  }
  // Moving the jump further than the spatial gap is never worth it.
  const StepFunction small(0.0, {{0.1, 0.3}});
  CHECK(d_j1(small, StepFunction(0.0, {{0.9, 0.3}})) == Approx(0.3).margin(1e-6));
  for (int n : {8, 16, 64, 1000}) {
    CHECK(d_m1(shifted(n), x) <= 1.0 / n + 1e-6);
    CHECK(d_j1(shifted(n), x) >= 0.25);
  }
}

TEST_CASE("d_m1 agrees with a discrete Frechet bracket") {
  std::mt19937_64 gen(99);
  const double h = 2e-3;
  for (int i = 0; i < 60; ++i) {
    const auto f = oracle::random_step(gen, 3, i % 2 == 0);
    const auto g = oracle::random_step(gen, 3, i % 3 == 0);
    const double d = d_m1(f, g);
    const double disc = oracle::discrete_frechet(f, g, h);
    CHECK(d <= disc + 1e-6);
    CHECK(d >= disc - h - 1e-9);
  }
}

TEST_CASE("d_j1 agrees with exhaustive jump placement") {
  std::mt19937_64 gen(123);
  for (int i = 0; i < 150; ++i) {
    const auto f = oracle::random_step(gen, 3, i % 2 == 0);
    const auto g = oracle::random_step(gen, 3, i % 2 == 0);
    CHECK(d_j1(f, g) == Approx(oracle::brute_j1(f, g)).margin(2e-6));
  }
}

TEST_CASE("metric properties on random pairs") {
  std::mt19937_64 gen(8);
  const double tol = 1e-6;
  for (int i = 0; i < 1000; ++i) {
    const auto f = oracle::random_step(gen, 6, i % 2 == 0);
    const auto g = oracle::random_step(gen, 6, i % 4 == 0);
    const double m1 = d_m1(f, g), j1 = d_j1(f, g), sup = sup_distance(f, g);
    CHECK(m1 <= sup + tol);
    CHECK(j1 <= sup + tol);
    CHECK(m1 <= j1 + tol);
    CHECK(std::abs(m1 - d_m1(g, f)) <= 2 * tol);
    CHECK(std::abs(j1 - d_j1(g, f)) <= 2 * tol);
  }
}

TEST_CASE("metric tolerance handling") {
  const auto x = StepFunction::indicator(0.5);
  CHECK_THROWS_AS(d_m1(x, shifted(8), {.tol = 0.0}), std::domain_error);
  CHECK_THROWS_AS(d_m1(x, StepFunction::indicator(0.7), {.tol = 1e-12, .max_iterations = 3}), ResourceError);
  const double coarse = d_m1(x, StepFunction::indicator(0.7), {.tol = 1e-2});
  CHECK(coarse >= 0.2);
  CHECK(coarse <= 0.2 + 1e-2);
}
