#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "maxstream/cadlag.hpp"

namespace maxstream {

struct Atom {
  double time;
  double mark;
  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

/// Finite multiset of (time, mark) atoms in [0, 1] x (0, inf].
class PointMeasure {
 public:
  PointMeasure() = default;
  explicit PointMeasure(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool operator==(const PointMeasure&) const = default;

 private:
  std::vector<Atom> atoms_;  // sorted by time, then mark
};

// {"atoms": [[t, x], ...]}
nlohmann::json to_json(const PointMeasure& eta);
PointMeasure point_measure_from_json(const nlohmann::json& j);

/// t -> max_{i <= floor(nt)} X_i / a_n, with value 0 on [0, 1/n).
StepFunction partial_max_process(std::span<const double> xs, double an);

/// Same path built only from the X_i / a_n that exceed u.
StepFunction truncated_max_process(std::span<const double> xs, double an, double u);

/// Atoms (i/n, X_i / a_n) for the positive X_i.
PointMeasure time_space_measure(std::span<const double> xs, double an);

/// t -> max over atoms with t_i <= t and u < x_i < inf of x_i; 0 when there are none.
StepFunction max_functional(const PointMeasure& eta, double u);

}  // namespace maxstream
