#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace maxstream {

struct Jump {
  double time;
  double value;
  bool operator==(const Jump&) const = default;
};

/// Right-continuous piecewise-constant path on [0, 1].
///
/// The path equals `initial_value()` on [0, t_1) and `jumps()[k].value` on
/// [t_k, t_{k+1}). Jump times are strictly increasing in (0, 1]; zero-size
/// jumps are dropped on construction so that equal paths compare equal.
class StepFunction {
 public:
  StepFunction() = default;
  explicit StepFunction(double initial, std::vector<Jump> jumps = {});

  static StepFunction constant(double c) { return StepFunction(c); }
  /// 1 on [from, 1], 0 before.
  static StepFunction indicator(double from);

  double initial_value() const noexcept { return initial_; }
  std::span<const Jump> jumps() const noexcept { return jumps_; }
  std::size_t jump_count() const noexcept { return jumps_.size(); }
  double final_value() const noexcept { return jumps_.empty() ? initial_ : jumps_.back().value; }

  /// Value of constancy piece k: piece 0 is the initial value, piece k >= 1
  /// starts at jumps()[k-1].time.
  double piece_value(std::size_t k) const noexcept { return k == 0 ? initial_ : jumps_[k - 1].value; }
  double piece_start(std::size_t k) const noexcept { return k == 0 ? 0.0 : jumps_[k - 1].time; }
  std::size_t piece_count() const noexcept { return jumps_.size() + 1; }

  bool operator==(const StepFunction&) const = default;

 private:
  double initial_ = 0.0;
  std::vector<Jump> jumps_;
};

/// x(t); throws std::domain_error for t outside [0, 1].
double eval(const StepFunction& f, double t);

/// x(t-); throws std::domain_error for t outside (0, 1].
double left_limit(const StepFunction& f, double t);

/// Exact uniform distance, evaluated on the merged jump grid.
double sup_distance(const StepFunction& f, const StepFunction& g);

bool is_nondecreasing(const StepFunction& f) noexcept;

struct GraphPoint {
  double time;
  double value;
  bool operator==(const GraphPoint&) const = default;
};

/// Vertices of the completed graph, in the graph's order: horizontal runs
/// alternate with vertical segments drawn from x(t-) to x(t).
struct GraphPolyline {
  std::vector<GraphPoint> points;

  std::size_t segment_count() const noexcept { return points.empty() ? 0 : points.size() - 1; }
};

GraphPolyline completed_graph(const StepFunction& f);

/// Inverse of completed_graph: vertical segments become jumps.
StepFunction from_completed_graph(const GraphPolyline& graph);

// {"initial": v0, "jumps": [[t1, v1], ...]}
nlohmann::json to_json(const StepFunction& f);
StepFunction step_function_from_json(const nlohmann::json& j);

// Rows "t,v" starting with "0,v0"; printed with round-trip precision.
std::string to_csv(const StepFunction& f);
StepFunction step_function_from_csv(std::string_view csv);

}  // namespace maxstream
