#include "maxstream/cadlag.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "format.hpp"

namespace maxstream {

StepFunction::StepFunction(double initial, std::vector<Jump> jumps) : initial_(initial) {
  if (!std::isfinite(initial)) throw std::invalid_argument("StepFunction: initial value must be finite");
  jumps_.reserve(jumps.size());
  double prev_time = 0.0;
  double prev_value = initial;
  for (const Jump& j : jumps) {
    if (!(j.time > prev_time) || j.time > 1.0) {
      throw std::invalid_argument("StepFunction: jump times must be strictly increasing in (0, 1]");
    }
    if (!std::isfinite(j.value)) throw std::invalid_argument("StepFunction: jump values must be finite");
    prev_time = j.time;
    if (j.value == prev_value) continue;
    jumps_.push_back(j);
    prev_value = j.value;
  }
}

StepFunction StepFunction::indicator(double from) {
  if (from <= 0.0) return StepFunction(1.0);
  return StepFunction(0.0, {{from, 1.0}});
}

double eval(const StepFunction& f, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval: t must lie in [0, 1]");
  const auto js = f.jumps();
  auto it = std::upper_bound(js.begin(), js.end(), t, [](double x, const Jump& j) { return x < j.time; });
  return it == js.begin() ? f.initial_value() : std::prev(it)->value;
}

double left_limit(const StepFunction& f, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("left_limit: t must lie in (0, 1]");
  const auto js = f.jumps();
  auto it = std::lower_bound(js.begin(), js.end(), t, [](const Jump& j, double x) { return j.time < x; });
  return it == js.begin() ? f.initial_value() : std::prev(it)->value;
}

double sup_distance(const StepFunction& f, const StepFunction& g) {
  // Walk both jump lists; between merged grid points both paths are constant.
  const auto a = f.jumps();
  const auto b = g.jumps();
  double fv = f.initial_value();
  double gv = g.initial_value();
  double best = std::abs(fv - gv);
  std::size_t i = 0;
  std::size_t k = 0;
  while (i < a.size() || k < b.size()) {
    const double ta = i < a.size() ? a[i].time : 2.0;
    const double tb = k < b.size() ? b[k].time : 2.0;
    const double t = std::min(ta, tb);
    if (ta == t) fv = a[i++].value;
    if (tb == t) gv = b[k++].value;
    best = std::max(best, std::abs(fv - gv));
  }
  return best;
}

bool is_nondecreasing(const StepFunction& f) noexcept {
  double prev = f.initial_value();
  for (const Jump& j : f.jumps()) {
    if (j.value < prev) return false;
    prev = j.value;
  }
  return true;
}

GraphPolyline completed_graph(const StepFunction& f) {
  GraphPolyline g;
  g.points.reserve(2 * f.jump_count() + 2);
  double v = f.initial_value();
  g.points.push_back({0.0, v});
  for (const Jump& j : f.jumps()) {
    g.points.push_back({j.time, v});
    g.points.push_back({j.time, j.value});
    v = j.value;
  }
  if (g.points.back().time < 1.0) g.points.push_back({1.0, v});
  return g;
}

StepFunction from_completed_graph(const GraphPolyline& graph) {
  if (graph.points.empty()) throw std::invalid_argument("from_completed_graph: empty polyline");
  std::vector<Jump> jumps;
  for (std::size_t i = 1; i < graph.points.size(); ++i) {
    const GraphPoint& p = graph.points[i - 1];
    const GraphPoint& q = graph.points[i];
    if (p.time == q.time && p.value != q.value) jumps.push_back({q.time, q.value});
  }
  return StepFunction(graph.points.front().value, std::move(jumps));
}

nlohmann::json to_json(const StepFunction& f) {
  nlohmann::json jumps = nlohmann::json::array();
  for (const Jump& j : f.jumps()) jumps.push_back({j.time, j.value});
  return {{"initial", f.initial_value()}, {"jumps", std::move(jumps)}};
}

StepFunction step_function_from_json(const nlohmann::json& j) {
  std::vector<Jump> jumps;
  for (const auto& row : j.at("jumps")) {
    if (!row.is_array() || row.size() != 2) throw std::invalid_argument("StepFunction JSON: jumps must be [t, v] pairs");
    jumps.push_back({row[0].get<double>(), row[1].get<double>()});
  }
  return StepFunction(j.at("initial").get<double>(), std::move(jumps));
}

std::string to_csv(const StepFunction& f) {
  std::string out;
  detail::append_row(out, 0.0, f.initial_value());
  for (const Jump& j : f.jumps()) detail::append_row(out, j.time, j.value);
  return out;
}

StepFunction step_function_from_csv(std::string_view csv) {
  std::vector<Jump> rows;
  for (const auto& fields : detail::parse_csv_rows(csv)) {
    if (fields.size() != 2) throw std::invalid_argument("StepFunction CSV: expected two columns per row");
    rows.push_back({fields[0], fields[1]});
  }
  if (rows.empty() || rows.front().time != 0.0) {
    throw std::invalid_argument("StepFunction CSV: first row must be the initial value at t = 0");
  }
  const double initial = rows.front().value;
  rows.erase(rows.begin());
  return StepFunction(initial, std::move(rows));
}

}  // namespace maxstream
