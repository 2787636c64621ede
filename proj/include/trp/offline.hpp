#pragma once

// Offline latency-optimal tours on the line, their arc-length index, and the
// per-request lower bounds derived from them.

#include <trp/core.hpp>
#include <trp/scalar.hpp>
#include <trp/trajectory.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace trp {

enum class Direction { Left, Right };

inline std::string to_string(Direction d) { return d == Direction::Left ? "left" : "right"; }

/// Zigzag route o -> w1 -> w2 -> ... where consecutive turning points lie on
/// opposite sides of the origin and magnitudes strictly grow on each side.
/// An empty tour (no turning points) stays at the origin.
struct Tour {
  Direction first_direction = Direction::Left;
  std::vector<Scalar> turning_points;
  Scalar total_arclength;

  /// Origin followed by the turning points.
  std::vector<Scalar> vertices() const {
    std::vector<Scalar> v{Scalar(0)};
    v.insert(v.end(), turning_points.begin(), turning_points.end());
    return v;
  }
  Scalar leftmost() const {
    Scalar lo(0);
    for (const auto& p : turning_points) lo = p < lo ? p : lo;
    return lo;
  }
  Scalar rightmost() const {
    Scalar hi(0);
    for (const auto& p : turning_points) hi = max_of(hi, p);
    return hi;
  }
  bool covers(const Scalar& p) const { return leftmost() <= p && p <= rightmost(); }

  std::string str() const {
    std::string out = "o";
    for (const auto& p : turning_points) out += " -> " + to_string(p);
    return out;
  }

  friend bool operator==(const Tour&, const Tour&) = default;
};

/// Builds a tour from its turning points, checking alternation and growth.
inline Tour make_tour(std::vector<Scalar> turning_points) {
  Tour t;
  Scalar prev(0);
  Scalar last_left(0), last_right(0);
  for (std::size_t i = 0; i < turning_points.size(); ++i) {
    const Scalar& p = turning_points[i];
    if (sgn(p) == 0) throw Error("turning point at the origin");
    if (i > 0 && sgn(p) == sgn(prev)) throw Error("turning points must alternate sides");
    if (sgn(p) < 0) {
      if (!(p < last_left)) throw Error("left turning points must grow in magnitude");
      last_left = p;
    } else {
      if (!(p > last_right)) throw Error("right turning points must grow in magnitude");
      last_right = p;
    }
    t.total_arclength += abs_diff(p, prev);
    prev = p;
  }
  if (!turning_points.empty() && sgn(turning_points.front()) > 0) t.first_direction = Direction::Right;
  t.turning_points = std::move(turning_points);
  return t;
}

/// Arc-length from the origin along a tour to the first visit of each covered point.
class ArcIndex {
 public:
  explicit ArcIndex(const Tour& tour) : vertices_(tour.vertices()) {
    arcs_.reserve(vertices_.size());
    Scalar acc(0);
    arcs_.push_back(acc);
    for (std::size_t k = 1; k < vertices_.size(); ++k) {
      acc += abs_diff(vertices_[k], vertices_[k - 1]);
      arcs_.push_back(acc);
    }
  }

  bool covers(const Scalar& p) const {
    if (sgn(p) == 0) return true;
    for (std::size_t k = 1; k < vertices_.size(); ++k) {
      if (on_leg(k, p)) return true;
    }
    return false;
  }

  Scalar at(const Scalar& p) const {
    if (sgn(p) == 0) return Scalar(0);
    for (std::size_t k = 1; k < vertices_.size(); ++k) {
      if (on_leg(k, p)) return arcs_[k - 1] + abs_diff(p, vertices_[k - 1]);
    }
    throw Error("position " + to_string(p) + " not covered by tour");
  }

  Scalar total() const { return arcs_.back(); }
  const std::vector<Scalar>& vertices() const { return vertices_; }
  /// Arc-length at each vertex.
  const std::vector<Scalar>& vertex_arcs() const { return arcs_; }

 private:
  bool on_leg(std::size_t k, const Scalar& p) const {
    const Scalar& u = vertices_[k - 1];
    const Scalar& v = vertices_[k];
    return (u <= p && p <= v) || (v <= p && p <= u);
  }

  std::vector<Scalar> vertices_;
  std::vector<Scalar> arcs_;
};

inline ArcIndex arc_index(const Tour& tour) { return ArcIndex(tour); }

/// Unit-speed traversal of the tour from the origin, with no waiting.
template <typename T = QuadraticScalar>
BasicTrajectory<T> tour_trajectory(const Tour& tour) {
  BasicTrajectory<T> traj;
  for (const auto& p : tour.turning_points) traj.move_to(T(p));
  return traj;
}

struct LatencyTour {
  Tour tour;
  Scalar opt_sum;
};

namespace detail {

struct SidePoints {
  std::vector<Scalar> magnitude;  // strictly increasing
  std::vector<long> weight;
};

inline std::pair<SidePoints, SidePoints> split_sides(const std::vector<Scalar>& points) {
  std::map<Scalar, long> left, right;
  for (const auto& p : points) {
    if (sgn(p) < 0) ++left[Scalar(-p)];
    if (sgn(p) > 0) ++right[p];
  }
  SidePoints l, r;
  for (auto& [m, w] : left) {
    l.magnitude.push_back(m);
    l.weight.push_back(w);
  }
  for (auto& [m, w] : right) {
    r.magnitude.push_back(m);
    r.weight.push_back(w);
  }
  return {std::move(l), std::move(r)};
}

struct Cost {
  Scalar latency;
  long turns = 0;
  friend bool operator<(const Cost& a, const Cost& b) {
    if (a.latency != b.latency) return a.latency < b.latency;
    return a.turns < b.turns;
  }
  friend bool operator==(const Cost& a, const Cost& b) { return a.latency == b.latency && a.turns == b.turns; }
};

}  // namespace detail

/// Minimum-latency tour over points all present at time 0 (server speed 1).
///
/// Interval DP over distinct sorted points on each side: state (i, j, end) means
/// the i closest left points and j closest right points are served and the server
/// stands at the outermost one on side `end`. Extending a side by one point costs
/// travel distance times the weight still unserved. Ties prefer a left-first tour,
/// then fewer turns, then turning as early as possible. Points at the origin finish
/// at time 0 and are not part of the tour; duplicates each count in opt_sum.
inline LatencyTour optimal_latency_tour(const std::vector<Scalar>& points) {
  if (points.empty()) throw Error("empty point list");
  auto [L, R] = detail::split_sides(points);
  const std::size_t nl = L.magnitude.size();
  const std::size_t nr = R.magnitude.size();

  std::vector<long> pre_l(nl + 1, 0), pre_r(nr + 1, 0);
  for (std::size_t i = 0; i < nl; ++i) pre_l[i + 1] = pre_l[i] + L.weight[i];
  for (std::size_t j = 0; j < nr; ++j) pre_r[j + 1] = pre_r[j] + R.weight[j];
  const long total = pre_l[nl] + pre_r[nr];

  // Position of the server in state (i, j, side); side 0 = left, 1 = right.
  auto pos = [&](std::size_t i, std::size_t j, int side) -> Scalar {
    if (side == 0) return i == 0 ? Scalar(0) : Scalar(-L.magnitude[i - 1]);
    return j == 0 ? Scalar(0) : R.magnitude[j - 1];
  };

  const std::size_t W = nr + 1;
  std::vector<detail::Cost> best[2] = {std::vector<detail::Cost>((nl + 1) * W),
                                       std::vector<detail::Cost>((nl + 1) * W)};
  auto idx = [W](std::size_t i, std::size_t j) { return i * W + j; };

  // Cost of moving from state (i, j, side) one step toward `dir`, plus the rest.
  auto step = [&](std::size_t i, std::size_t j, int side, int dir) {
    long remaining = total - pre_l[i] - pre_r[j];
    std::size_t ni = dir == 0 ? i + 1 : i;
    std::size_t nj = dir == 1 ? j + 1 : j;
    Scalar target = pos(ni, nj, dir);
    detail::Cost c = best[dir][idx(ni, nj)];
    c.latency += abs_diff(target, pos(i, j, side)) * remaining;
    bool at_origin = (side == 0 ? i == 0 : j == 0);
    if (dir != side && !at_origin) c.turns += 1;
    return c;
  };

  for (std::size_t i = nl + 1; i-- > 0;) {
    for (std::size_t j = nr + 1; j-- > 0;) {
      for (int side = 0; side < 2; ++side) {
        if (i == nl && j == nr) continue;
        detail::Cost c;
        bool have = false;
        for (int dir = 0; dir < 2; ++dir) {
          if ((dir == 0 && i == nl) || (dir == 1 && j == nr)) continue;
          detail::Cost cand = step(i, j, side, dir);
          if (!have || cand < c) c = cand;
          have = true;
        }
        best[side][idx(i, j)] = c;
      }
    }
  }

  LatencyTour out;
  if (nl + nr == 0) {
    out.opt_sum = 0;
    return out;
  }

  // Reconstruct. The start state is (0, 0); choose the first direction.
  std::size_t i = 0, j = 0;
  int side = 0;
  int dir;
  if (nl == 0) {
    dir = 1;
  } else if (nr == 0) {
    dir = 0;
  } else {
    dir = step(0, 0, 0, 1).latency < step(0, 0, 0, 0).latency ? 1 : 0;
  }
  out.opt_sum = step(0, 0, 0, dir).latency;
  std::vector<Scalar> turns;
  int moving = dir;
  while (i < nl || j < nr) {
    if (dir == 0) {
      ++i;
    } else {
      ++j;
    }
    side = dir;
    if (i == nl && j == nr) break;
    int next;
    if (i == nl) {
      next = 1;
    } else if (j == nr) {
      next = 0;
    } else {
      detail::Cost stay = step(i, j, side, side);
      detail::Cost flip = step(i, j, side, 1 - side);
      // On a tie, turning now makes the current turning point the smaller one.
      next = (flip < stay || flip == stay) ? 1 - side : side;
    }
    if (next != moving) {
      turns.push_back(pos(i, j, side));
      moving = next;
    }
    dir = next;
  }
  turns.push_back(pos(i, j, side));
  out.tour = make_tour(std::move(turns));
  return out;
}

struct BruteForceResult {
  Scalar opt_sum;
  std::vector<std::size_t> order;  // indices into the input points
};

/// Exact minimum latency over all visiting orders, moving point to point from the
/// origin at unit speed. Independent of the DP; used as its oracle.
inline BruteForceResult brute_force_latency(const std::vector<Scalar>& points, std::size_t max_n = 9) {
  if (points.empty()) throw Error("empty point list");
  if (points.size() > max_n) {
    throw Error("brute force limited to " + std::to_string(max_n) + " points, got " + std::to_string(points.size()));
  }
  const std::size_t n = points.size();
  BruteForceResult best;
  bool found = false;
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  order.reserve(n);

  std::function<void(const Scalar&, const Scalar&, const Scalar&)> dfs =
      [&](const Scalar& at, const Scalar& clock, const Scalar& sum) {
        if (order.size() == n) {
          if (!found || sum < best.opt_sum) {
            best.opt_sum = sum;
            best.order = order;
            found = true;
          }
          return;
        }
        // Every remaining completion is at least the current clock.
        if (found && sum + clock * Scalar(static_cast<long>(n - order.size())) >= best.opt_sum) return;
        for (std::size_t k = 0; k < n; ++k) {
          if (used[k]) continue;
          used[k] = true;
          order.push_back(k);
          Scalar t = clock + abs_diff(points[k], at);
          dfs(points[k], t, sum + t);
          order.pop_back();
          used[k] = false;
        }
      };
  dfs(Scalar(0), Scalar(0), Scalar(0));
  return best;
}

/// Per-request lower bounds on the offline optimum's service time.
struct RequestBound {
  Scalar tour_bound;   // max{arc-length to the location along the tour, arrival}
  Scalar metric_free;  // max{|location|, arrival}
};

/// Bounds for each request's actual location against `tour`.
inline std::vector<RequestBound> opt_request_lower_bound(const Instance& inst, const Tour& tour) {
  ArcIndex index(tour);
  std::vector<RequestBound> out;
  out.reserve(inst.size());
  for (const auto& r : inst.requests()) {
    out.push_back({max_of(index.at(r.actual_loc), r.arrival_time),
                   max_of(Scalar(abs(r.actual_loc)), r.arrival_time)});
  }
  return out;
}

inline Scalar opt_sum_lower_bound(const Instance& inst) {
  Scalar arrivals(0);
  for (const auto& r : inst.requests()) arrivals += r.arrival_time;
  return max_of(optimal_latency_tour(inst.actual_locations()).opt_sum, arrivals);
}

}  // namespace trp
