#include "maxstream/maxima.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxstream {

PointMeasure::PointMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const Atom& a : atoms_) {
    if (!(a.time >= 0.0 && a.time <= 1.0)) throw std::invalid_argument("PointMeasure: atom time outside [0, 1]");
    if (!(a.mark > 0.0)) throw std::invalid_argument("PointMeasure: atom marks must be positive");
  }
  std::sort(atoms_.begin(), atoms_.end());
}

nlohmann::json to_json(const PointMeasure& eta) {
  auto atoms = nlohmann::json::array();
  for (const Atom& a : eta.atoms()) atoms.push_back({a.time, a.mark});
  return {{"atoms", std::move(atoms)}};
}

PointMeasure point_measure_from_json(const nlohmann::json& j) {
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_array() || a.size() != 2) throw std::invalid_argument("PointMeasure JSON: atoms must be [t, x] pairs");
    atoms.push_back({a[0].get<double>(), a[1].is_null() ? INFINITY : a[1].get<double>()});
  }
  return PointMeasure(std::move(atoms));
}

namespace {

StepFunction running_max(std::span<const double> xs, double an, double u) {
  if (xs.empty()) throw std::domain_error("partial maxima of an empty sequence");
  if (!(an > 0.0)) throw std::domain_error("partial maxima: a_n must be positive");
  const auto n = static_cast<double>(xs.size());
  std::vector<Jump> jumps;
  double cur = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = xs[i] / an;
    if (v > u && v > cur) {
      cur = v;
      jumps.push_back({static_cast<double>(i + 1) / n, v});
    }
  }
  return StepFunction(0.0, std::move(jumps));
}

}  // namespace

StepFunction partial_max_process(std::span<const double> xs, double an) { return running_max(xs, an, -INFINITY); }

StepFunction truncated_max_process(std::span<const double> xs, double an, double u) {
  if (!(u > 0.0)) throw std::domain_error("truncated_max_process: u must be positive");
  return running_max(xs, an, u);
}

PointMeasure time_space_measure(std::span<const double> xs, double an) {
  if (!(an > 0.0)) throw std::domain_error("time_space_measure: a_n must be positive");
  const auto n = static_cast<double>(xs.size());
  std::vector<Atom> atoms;
  atoms.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > 0.0) atoms.push_back({static_cast<double>(i + 1) / n, xs[i] / an});
  }
  return PointMeasure(std::move(atoms));
}

StepFunction max_functional(const PointMeasure& eta, double u) {
  if (!(u > 0.0)) throw std::domain_error("max_functional: u must be positive");
  double initial = 0.0;
  double cur = 0.0;
  std::vector<Jump> jumps;
  for (const Atom& a : eta.atoms()) {
    if (!(a.mark > u) || std::isinf(a.mark) || !(a.mark > cur)) continue;
    cur = a.mark;
    if (a.time == 0.0) {
      initial = cur;
    } else if (!jumps.empty() && jumps.back().time == a.time) {
      jumps.back().value = cur;
    } else {
      jumps.push_back({a.time, cur});
    }
  }
  return StepFunction(initial, std::move(jumps));
}

}  // namespace maxstream
