#include <catch_amalgamated.hpp>

#include <random>
#include <stdexcept>

#include "maxstream/cadlag.hpp"
#include "oracles.hpp"

using namespace maxstream;
using Catch::Approx;

TEST_CASE("eval is right-continuous at jumps") {
  const auto f = StepFunction::indicator(0.5);
  CHECK(eval(f, 0.25) == 0.0);
  CHECK(eval(f, 0.5) == 1.0);
  CHECK(eval(f, 1.0) == 1.0);
  CHECK_THROWS_AS(eval(f, -0.1), std::domain_error);
  CHECK_THROWS_AS(eval(f, 1.5), std::domain_error);
}

TEST_CASE("left limits") {
  const auto f = StepFunction::indicator(0.5);
  CHECK(left_limit(f, 0.5) == 0.0);
  CHECK(left_limit(f, 0.75) == 1.0);
  CHECK(left_limit(StepFunction::constant(3.5), 0.3) == 3.5);
  CHECK_THROWS_AS(left_limit(f, 0.0), std::domain_error);
}

TEST_CASE("construction normalizes and validates") {
  const StepFunction f(1.0, {{0.2, 1.0}, {0.4, 2.0}, {0.6, 2.0}});
  CHECK(f.jump_count() == 1);
  CHECK(f == StepFunction(1.0, {{0.4, 2.0}}));
  CHECK_THROWS(StepFunction(0.0, {{0.5, 1.0}, {0.5, 2.0}}));
  CHECK_THROWS(StepFunction(0.0, {{0.0, 1.0}}));
  CHECK_THROWS(StepFunction(0.0, {{1.2, 1.0}}));
  CHECK_THROWS(StepFunction(0.0, {{0.5, NAN}}));
}

TEST_CASE("sup distance") {
  const auto f = StepFunction::indicator(0.5);
  CHECK(sup_distance(f, f) == 0.0);
  CHECK(sup_distance(f, StepFunction::constant(0.0)) == 1.0);
  CHECK(sup_distance(f, StepFunction::indicator(0.6)) == 1.0);
  CHECK(sup_distance(StepFunction(0.0, {{1.0, 5.0}}), StepFunction::constant(0.0)) == 5.0);
}

TEST_CASE("sup distance is a metric on random paths") {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 300; ++i) {
    const auto f = oracle::random_step(gen, 5, false);
    const auto g = oracle::random_step(gen, 5, false);
    const auto h = oracle::random_step(gen, 5, false);
    CHECK(sup_distance(f, g) == sup_distance(g, f));
    CHECK(sup_distance(f, h) <= sup_distance(f, g) + sup_distance(g, h) + 1e-12);
    CHECK(sup_distance(f, f) == 0.0);
    if (!(f == g)) CHECK(sup_distance(f, g) > 0.0);
  }
}

TEST_CASE("left limit agrees with eval just before") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unif(1e-6, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto f = oracle::random_step(gen, 6, false);
    const double t = unif(gen);
    double prev = 0.0;
    for (const Jump& j : f.jumps()) {
      if (j.time < t) prev = j.time;
    }
    const double h = 0.5 * (t - prev);
    CHECK(left_limit(f, t) == eval(f, t - h));
  }
}

TEST_CASE("completed graph shapes") {
  const auto c = completed_graph(StepFunction::constant(1.0));
  REQUIRE(c.segment_count() == 1);
  CHECK(c.points[0] == GraphPoint{0.0, 1.0});
  CHECK(c.points[1] == GraphPoint{1.0, 1.0});

  const auto ind = completed_graph(StepFunction::indicator(0.5));
  REQUIRE(ind.segment_count() == 3);
  CHECK(ind.points == std::vector<GraphPoint>{{0.0, 0.0}, {0.5, 0.0}, {0.5, 1.0}, {1.0, 1.0}});

  const StepFunction two(0.0, {{1.0 / 3, 1.0}, {2.0 / 3, 2.0}});
  CHECK(completed_graph(two).segment_count() == 5);

  const auto end_jump = completed_graph(StepFunction(0.0, {{1.0, 2.0}}));
  CHECK(end_jump.points.back() == GraphPoint{1.0, 2.0});
}

TEST_CASE("completed graph is connected, time-ordered and round-trips") {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 300; ++i) {
    const auto f = oracle::random_step(gen, 6, i % 2 == 0);
    const auto g = completed_graph(f);
    CHECK(g.segment_count() == 2 * f.jump_count() + 1 - (f.jump_count() > 0 && f.jumps().back().time == 1.0 ? 1 : 0));
    CHECK(g.points.front() == GraphPoint{0.0, f.initial_value()});
    CHECK(g.points.back() == GraphPoint{1.0, f.final_value()});
    for (std::size_t k = 0; k + 1 < g.points.size(); ++k) {
      CHECK(g.points[k].time <= g.points[k + 1].time);
      // each segment is either horizontal or vertical
      CHECK((g.points[k].time == g.points[k + 1].time || g.points[k].value == g.points[k + 1].value));
    }
    CHECK(from_completed_graph(g) == f);
  }
}

TEST_CASE("JSON and CSV round trips are bit-exact") {
  std::mt19937_64 gen(9);
  for (int i = 0; i < 100; ++i) {
    const auto f = oracle::random_step(gen, 8, false);
    CHECK(step_function_from_json(nlohmann::json::parse(to_json(f).dump())) == f);
    CHECK(step_function_from_csv(to_csv(f)) == f);
  }
  const auto j = to_json(StepFunction(0.5, {{0.25, 1.5}}));
  CHECK(j.dump() == R"({"initial":0.5,"jumps":[[0.25,1.5]]})");
  CHECK(to_csv(StepFunction(0.5, {{0.25, 1.5}})) == "0,0.5\n0.25,1.5\n");
  CHECK_THROWS(step_function_from_csv("0.1,1\n"));
}
