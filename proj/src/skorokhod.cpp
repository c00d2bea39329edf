#include "maxstream/skorokhod.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxstream/errors.hpp"

namespace maxstream {

double segment_gap(double x1, double x2, double x3) noexcept {
  const double lo = std::min(x1, x3);
  const double hi = std::max(x1, x3);
  if (x2 >= lo && x2 <= hi) return 0.0;
  return std::min(std::abs(x2 - x1), std::abs(x3 - x2));
}

namespace {

void check_delta(double delta, const char* what) {
  if (!(delta > 0.0)) throw std::domain_error(std::string(what) + ": delta must be positive");
}

// Pieces a <= c can host t1 and t2 within one window iff c == a or
// s_c - s_{a+1} < delta: t1 must stay strictly below the end of piece a.
template <class Visit>
void for_each_window(const StepFunction& f, double delta, Visit&& visit) {
  const std::size_t pieces = f.piece_count();
  for (std::size_t a = 0; a < pieces; ++a) {
    const double a_end = a + 1 < pieces ? f.piece_start(a + 1) : 1.0;
    for (std::size_t c = a; c < pieces; ++c) {
      if (c > a && !(f.piece_start(c) - a_end < delta)) break;
      if (!visit(a, c)) break;
    }
  }
}

}  // namespace

double osc_m1(const StepFunction& f, double delta) {
  check_delta(delta, "osc_m1");
  double best = 0.0;
  std::size_t current_a = static_cast<std::size_t>(-1);
  double lo = 0.0;
  double hi = 0.0;
  for_each_window(f, delta, [&](std::size_t a, std::size_t c) {
    const double vc = f.piece_value(c);
    if (a != current_a) {
      current_a = a;
      lo = hi = f.piece_value(a);
    }
    lo = std::min(lo, vc);
    hi = std::max(hi, vc);
    const double va = f.piece_value(a);
    best = std::max({best, hi - std::max(va, vc), std::min(va, vc) - lo});
    return true;
  });
  return best;
}

double osc_j1(const StepFunction& f, double delta) {
  check_delta(delta, "osc_j1");
  // For fixed (a, c), y -> min{|y - va|, |vc - y|} peaks at the window's extreme
  // values or at the values adjacent to the midpoint of va and vc.
  double best = 0.0;
  std::size_t current_a = static_cast<std::size_t>(-1);
  std::multiset<double> window;
  for_each_window(f, delta, [&](std::size_t a, std::size_t c) {
    if (a != current_a) {
      current_a = a;
      window.clear();
    }
    window.insert(f.piece_value(c));
    const double va = f.piece_value(a);
    const double vc = f.piece_value(c);
    auto score = [&](double y) { return std::min(std::abs(y - va), std::abs(vc - y)); };
    best = std::max({best, score(*window.begin()), score(*window.rbegin())});
    const auto mid = window.lower_bound(0.5 * (va + vc));
    if (mid != window.end()) best = std::max(best, score(*mid));
    if (mid != window.begin()) best = std::max(best, score(*std::prev(mid)));
    return true;
  });
  return best;
}

namespace {

struct Interval {
  double lo;
  double hi;
  bool empty() const noexcept { return lo > hi; }
};
constexpr Interval kEmpty{1.0, 0.0};

double linf(const GraphPoint& a, const GraphPoint& b) noexcept {
  return std::max(std::abs(a.time - b.time), std::abs(a.value - b.value));
}

// Parameters s in [0, 1] with ||a + s (b - a) - p||_inf <= eps.
Interval free_interval(const GraphPoint& p, const GraphPoint& a, const GraphPoint& b, double eps) {
  Interval r{0.0, 1.0};
  auto clip = [&](double pa, double pb, double pp) {
    const double d = pb - pa;
    if (d == 0.0) {
      if (std::abs(pa - pp) > eps) r = kEmpty;
      return;
    }
    double l1 = (pp - eps - pa) / d;
    double l2 = (pp + eps - pa) / d;
    if (l1 > l2) std::swap(l1, l2);
    r.lo = std::max(r.lo, l1);
    r.hi = std::min(r.hi, l2);
  };
  clip(a.time, b.time, p.time);
  clip(a.value, b.value, p.value);
  return r;
}

}  // namespace

bool m1_within(const GraphPolyline& pg, const GraphPolyline& qg, double eps) {
  const auto& P = pg.points;
  const auto& Q = qg.points;
  if (P.size() < 2 || Q.size() < 2) throw std::invalid_argument("m1_within: polylines need at least one segment");
  if (linf(P.front(), Q.front()) > eps || linf(P.back(), Q.back()) > eps) return false;
  const std::size_t p = P.size() - 1;
  const std::size_t q = Q.size() - 1;

  // left[i][j]: reachable part of the edge s = i, t in [j, j+1]
  // bottom[i][j]: reachable part of the edge t = j, s in [i, i+1]
  std::vector<Interval> left((p + 1) * q, kEmpty);
  std::vector<Interval> bottom(p * (q + 1), kEmpty);
  auto L = [&](std::size_t i, std::size_t j) -> Interval& { return left[i * q + j]; };
  auto B = [&](std::size_t i, std::size_t j) -> Interval& { return bottom[j * p + i]; };

  for (std::size_t j = 0; j < q; ++j) {
    const Interval f = free_interval(P[0], Q[j], Q[j + 1], eps);
    if (f.empty() || f.lo > 0.0) break;
    L(0, j) = f;
    if (f.hi < 1.0) break;
  }
  for (std::size_t i = 0; i < p; ++i) {
    const Interval f = free_interval(Q[0], P[i], P[i + 1], eps);
    if (f.empty() || f.lo > 0.0) break;
    B(i, 0) = f;
    if (f.hi < 1.0) break;
  }

  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      const Interval in_left = L(i, j);
      const Interval in_bottom = B(i, j);
      if (in_left.empty() && in_bottom.empty()) continue;
      Interval right = free_interval(P[i + 1], Q[j], Q[j + 1], eps);
      if (in_bottom.empty()) right.lo = std::max(right.lo, in_left.lo);
      if (!right.empty()) L(i + 1, j) = right;
      Interval top = free_interval(Q[j + 1], P[i], P[i + 1], eps);
      if (in_left.empty()) top.lo = std::max(top.lo, in_bottom.lo);
      if (!top.empty()) B(i, j + 1) = top;
    }
  }
  const Interval end_left = L(p, q - 1);
  const Interval end_bottom = B(p - 1, q);
  return (!end_left.empty() && end_left.hi >= 1.0) || (!end_bottom.empty() && end_bottom.hi >= 1.0);
}

namespace {

// Maximal runs of consecutive g-pieces whose value is within eps of v, as
// closed time intervals. `to_end` marks the run that includes t = 1.
struct Run {
  double start;
  double end;
  bool to_end;
};

std::vector<Run> good_runs(const StepFunction& g, double v, double eps) {
  std::vector<Run> runs;
  const std::size_t pieces = g.piece_count();
  std::size_t k = 0;
  while (k < pieces) {
    if (std::abs(g.piece_value(k) - v) > eps) {
      ++k;
      continue;
    }
    const double start = g.piece_start(k);
    while (k < pieces && std::abs(g.piece_value(k) - v) <= eps) ++k;
    runs.push_back(k < pieces ? Run{start, g.piece_start(k), false} : Run{start, 1.0, true});
  }
  return runs;
}

// Position set with a closed upper end and a possibly open lower end.
struct Reach {
  double lo;
  double hi;
  bool lo_open;
  bool empty() const noexcept { return lo > hi || (lo == hi && lo_open); }
};

void merge_into(std::vector<Reach>& set) {
  std::sort(set.begin(), set.end(), [](const Reach& x, const Reach& y) {
    return x.lo < y.lo || (x.lo == y.lo && !x.lo_open && y.lo_open);
  });
  std::vector<Reach> merged;
  for (const Reach& iv : set) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  set = std::move(merged);
}

}  // namespace

bool j1_within(const StepFunction& f, const StepFunction& g, double eps) {
  // f's jump i is moved to s'_i with |s'_i - s_i| <= eps (a piecewise-linear
  // time change through these anchors keeps |lambda - id| <= eps); the moved
  // path must stay within eps of g. Every moved piece [s'_i, s'_{i+1}) keeps
  // positive length and must sit inside one run of g. `reach` holds the
  // feasible positions of the current piece's start.
  if (std::abs(f.initial_value() - g.initial_value()) > eps) return false;
  std::vector<Reach> reach{{0.0, 0.0, false}};
  const std::size_t pieces = f.piece_count();
  for (std::size_t i = 0; i < pieces; ++i) {
    const auto runs = good_runs(g, f.piece_value(i), eps);
    const bool last = i + 1 == pieces;
    // Only a final piece that starts at 1 in f may shrink to the point 1.
    const bool pinned_at_one = f.piece_start(i) >= 1.0;
    std::vector<Reach> next;
    for (const Reach& r : reach) {
      for (const Run& run : runs) {
        Reach here{std::max(r.lo, run.start), std::min(r.hi, run.end), false};
        here.lo_open = r.lo > run.start ? r.lo_open : (r.lo == run.start && r.lo_open);
        if (here.empty()) continue;
        if (!pinned_at_one && !(here.lo < run.end)) continue;
        if (last) {
          if (run.to_end) return true;
          continue;
        }
        const double s = f.piece_start(i + 1);
        Reach window = s >= 1.0 ? Reach{1.0, 1.0, false} : Reach{std::max(s - eps, 0.0), std::min(s + eps, 1.0), false};
        if (here.lo >= window.lo) {
          window.lo = here.lo;
          window.lo_open = true;
        }
        window.hi = std::min(window.hi, run.end);
        if (!window.empty()) next.push_back(window);
      }
    }
    if (last || next.empty()) return false;
    merge_into(next);
    reach = std::move(next);
  }
  return false;
}

namespace {

template <class Decide>
double bisect_distance(double lo, double hi, const MetricOptions& opt, const char* name, Decide&& within) {
  if (!(opt.tol > 0.0)) throw std::domain_error(std::string(name) + ": tol must be positive");
  if (within(lo)) return lo;
  int guard = 0;
  while (!within(hi)) {
    lo = hi;
    hi = hi > 0.0 ? 2.0 * hi : opt.tol;
    if (++guard > 64) throw ResourceError(std::string(name) + ": could not bracket the distance");
  }
  for (int it = 0; hi - lo > opt.tol; ++it) {
    if (it >= opt.max_iterations) {
      throw ResourceError(std::string(name) + ": bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] still wider than tol after " + std::to_string(opt.max_iterations) + " iterations");
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (within(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double d_m1(const StepFunction& f, const StepFunction& g, const MetricOptions& opt) {
  const GraphPolyline p = completed_graph(f);
  const GraphPolyline q = completed_graph(g);
  const double lo = std::max(linf(p.points.front(), q.points.front()), linf(p.points.back(), q.points.back()));
  return bisect_distance(lo, sup_distance(f, g), opt, "d_m1", [&](double eps) { return m1_within(p, q, eps); });
}

double d_j1(const StepFunction& f, const StepFunction& g, const MetricOptions& opt) {
  const double lo = std::max(std::abs(f.initial_value() - g.initial_value()), std::abs(f.final_value() - g.final_value()));
  return bisect_distance(lo, sup_distance(f, g), opt, "d_j1", [&](double eps) { return j1_within(f, g, eps); });
}

}  // namespace maxstream
