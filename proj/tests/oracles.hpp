#pragma once

// Brute-force reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "maxstream/cadlag.hpp"
#include "maxstream/skorokhod.hpp"

namespace oracle {

using maxstream::Jump;
using maxstream::StepFunction;

inline StepFunction random_step(std::mt19937_64& gen, int max_jumps, bool integer_values, bool monotone = false) {
  std::uniform_int_distribution<int> count(0, max_jumps);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> level(-2, 2);
  const int k = count(gen);
  std::vector<double> times;
  while (static_cast<int>(times.size()) < k) {
    double t = unif(gen);
    if (unif(gen) < 0.1) t = 1.0;
    if (t > 1e-6 && std::none_of(times.begin(), times.end(), [&](double s) { return std::abs(s - t) < 1e-6; })) {
      times.push_back(t);
    }
  }
  std::sort(times.begin(), times.end());
  auto draw = [&] { return integer_values ? static_cast<double>(level(gen)) : 4.0 * unif(gen) - 2.0; };
  double v0 = draw();
  std::vector<Jump> jumps;
  double cur = v0;
  for (double t : times) {
    double v = draw();
    if (monotone) v = cur + std::abs(v);
    jumps.push_back({t, v});
    cur = v;
  }
  return StepFunction(v0, std::move(jumps));
}

// Sup of the two oscillation integrands over a dense set of times that
// includes every jump time and points just before it.
struct BruteOsc {
  double m1 = 0.0;
  double j1 = 0.0;
};

inline BruteOsc brute_oscillations(const StepFunction& f, double delta, int grid = 200) {
  std::vector<double> ts;
  for (int i = 0; i <= grid; ++i) ts.push_back(static_cast<double>(i) / grid);
  for (const Jump& j : f.jumps()) {
    ts.push_back(j.time);
    ts.push_back(j.time - 1e-9);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<double> vs;
  for (double t : ts) vs.push_back(maxstream::eval(f, t));
  BruteOsc out;
  for (std::size_t a = 0; a < ts.size(); ++a) {
    for (std::size_t c = a; c < ts.size() && ts[c] - ts[a] <= delta; ++c) {
      for (std::size_t b = a; b <= c; ++b) {
        const double lo = std::min(vs[a], vs[c]), hi = std::max(vs[a], vs[c]);
        const double gap = (vs[b] >= lo && vs[b] <= hi) ? 0.0 : std::min(std::abs(vs[b] - vs[a]), std::abs(vs[c] - vs[b]));
        out.m1 = std::max(out.m1, gap);
        out.j1 = std::max(out.j1, std::min(std::abs(vs[b] - vs[a]), std::abs(vs[c] - vs[b])));
      }
    }
  }
  return out;
}

// Discrete Fréchet distance (max-norm) between the completed graphs sampled
// with gaps of at most h. The continuous distance d satisfies
// result - h <= d <= result.
inline double discrete_frechet(const StepFunction& f, const StepFunction& g, double h) {
  auto sample = [&](const StepFunction& x) {
    const auto pts = maxstream::completed_graph(x).points;
    std::vector<maxstream::GraphPoint> out{pts.front()};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double len = std::max(std::abs(pts[i + 1].time - pts[i].time), std::abs(pts[i + 1].value - pts[i].value));
      const int k = std::max(1, static_cast<int>(std::ceil(len / h)));
      for (int s = 1; s <= k; ++s) {
        const double w = static_cast<double>(s) / k;
        out.push_back({pts[i].time + w * (pts[i + 1].time - pts[i].time), pts[i].value + w * (pts[i + 1].value - pts[i].value)});
      }
    }
    return out;
  };
  const auto p = sample(f), q = sample(g);
  auto dist = [](const maxstream::GraphPoint& a, const maxstream::GraphPoint& b) {
    return std::max(std::abs(a.time - b.time), std::abs(a.value - b.value));
  };
  std::vector<double> prev(q.size()), cur(q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      const double d = dist(p[i], q[j]);
      double best;
      if (i == 0 && j == 0) best = d;
      else if (i == 0) best = std::max(cur[j - 1], d);
      else if (j == 0) best = std::max(prev[j], d);
      else best = std::max(std::min({prev[j], prev[j - 1], cur[j - 1]}), d);
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return prev.back();
}

// J1 distance by exhaustive placement of f's jumps: each jump at s moves to a
// candidate position (its own time, a jump time of g, or a point just beside
// one, or a coarse grid point), keeping order; jumps at 1 stay at 1.
inline double brute_j1(const StepFunction& f, const StepFunction& g) {
  const auto fj = f.jumps();
  std::vector<double> cand;
  for (const Jump& j : g.jumps()) {
    cand.push_back(j.time);
    cand.push_back(j.time - 1e-9);
    cand.push_back(j.time + 1e-9);
  }
  for (int i = 1; i < 20; ++i) cand.push_back(i / 20.0);
  double best = maxstream::sup_distance(f, g);
  std::vector<double> pos(fj.size());
  auto rec = [&](auto&& self, std::size_t i, double prev, double cost) -> void {
    if (cost >= best) return;
    if (i == fj.size()) {
      std::vector<Jump> moved;
      for (std::size_t k = 0; k < fj.size(); ++k) moved.push_back({pos[k], fj[k].value});
      const StepFunction h(f.initial_value(), std::move(moved));
      best = std::min(best, std::max(cost, maxstream::sup_distance(h, g)));
      return;
    }
    std::vector<double> options{fj[i].time};
    if (fj[i].time < 1.0) {
      for (double c : cand) {
        if (c > 0.0 && c < 1.0) options.push_back(c);
      }
    }
    for (double c : options) {
      if (!(c > prev)) continue;
      pos[i] = c;
      self(self, i + 1, c, std::max(cost, std::abs(c - fj[i].time)));
    }
  };
  rec(rec, 0, 0.0, 0.0);
  return best;
}

// Root of E(0.5 Z^2)^a = 1 from plain Monte Carlo draws (std::mt19937_64 and
// std::normal_distribution, independent of the library's generator).
inline double mc_tail_index_half() {
  std::mt19937_64 gen(20240601);
  std::normal_distribution<double> normal;
  std::vector<double> w(10'000'000);
  for (double& x : w) {
    const double z = normal(gen);
    x = std::log(0.5 * z * z);
  }
  auto h = [&](double a) {
    double s = 0.0;
    for (double x : w) s += std::exp(a * x);
    return s / static_cast<double>(w.size()) - 1.0;
  };
  double lo = 1.0, hi = 4.0;
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
