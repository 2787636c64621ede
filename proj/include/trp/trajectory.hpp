#pragma once

// Piecewise-linear server motion on the line.

#include <trp/core.hpp>
#include <trp/quadratic.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace trp {

template <typename T>
struct BasicBreakpoint {
  T time;
  T position;
  friend bool operator==(const BasicBreakpoint&, const BasicBreakpoint&) = default;
};

/// Server position over time: breakpoints with strictly increasing times starting
/// at (0, 0), linear in between, constant after the last breakpoint.
template <typename T>
class BasicTrajectory {
 public:
  using value_type = T;
  using Breakpoint = BasicBreakpoint<T>;

  BasicTrajectory() : points_{{T(0), T(0)}} {}

  explicit BasicTrajectory(std::vector<Breakpoint> points) : points_(std::move(points)) {
    if (points_.empty() || points_.front().time != T(0) || points_.front().position != T(0)) {
      throw Error("trajectory must start at (0, 0)");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
      const auto& p = points_[i - 1];
      const auto& q = points_[i];
      if (!(p.time < q.time)) throw Error("trajectory times must strictly increase");
      if (abs(q.position - p.position) > q.time - p.time) throw Error("trajectory exceeds unit speed");
    }
  }

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  const Breakpoint& back() const { return points_.back(); }
  const T& end_time() const { return points_.back().time; }
  const T& end_position() const { return points_.back().position; }

  /// Moves at unit speed to `pos`; no-op when already there.
  void move_to(const T& pos) {
    T dist = abs(pos - points_.back().position);
    if (dist == T(0)) return;
    points_.push_back({points_.back().time + dist, pos});
  }
  /// Stays in place until time `t`; no-op when `t` is not in the future.
  void hold_until(const T& t) {
    if (t > points_.back().time) points_.push_back({t, points_.back().position});
  }

  /// Cuts the trajectory at `horizon`, interpolating the final breakpoint.
  void truncate(const T& horizon);

  bool within(const LineSegment& line) const {
    for (const auto& p : points_) {
      if (p.position < T(line.left()) || p.position > T(line.right())) return false;
    }
    return true;
  }

  friend bool operator==(const BasicTrajectory&, const BasicTrajectory&) = default;

 private:
  std::vector<Breakpoint> points_;
};

using Trajectory = BasicTrajectory<QuadraticScalar>;
using Breakpoint = Trajectory::Breakpoint;

namespace detail {

template <typename T>
T interpolate(const BasicBreakpoint<T>& p, const BasicBreakpoint<T>& q, const T& t) {
  if (p.position == q.position) return p.position;
  T span = q.time - p.time;
  if (q.position - p.position == span) return p.position + (t - p.time);
  if (p.position - q.position == span) return p.position - (t - p.time);
  return p.position + (q.position - p.position) * ((t - p.time) / (q.time - p.time));
}

/// Index of the segment [k, k+1] whose closed time range holds t, or size-1 past the end.
template <typename T>
std::size_t segment_at(const std::vector<BasicBreakpoint<T>>& pts, const T& t) {
  auto it = std::upper_bound(pts.begin(), pts.end(), t,
                             [](const T& v, const BasicBreakpoint<T>& b) { return v < b.time; });
  if (it == pts.begin()) return 0;
  return static_cast<std::size_t>(it - pts.begin()) - 1;
}

}  // namespace detail

template <typename T>
void BasicTrajectory<T>::truncate(const T& horizon) {
  std::size_t k = detail::segment_at(points_, horizon);
  if (k + 1 >= points_.size()) return;
  if (points_[k].time == horizon) {
    points_.resize(k + 1);
    return;
  }
  Breakpoint cut{horizon, detail::interpolate(points_[k], points_[k + 1], horizon)};
  points_.resize(k + 1);
  points_.push_back(std::move(cut));
}

template <typename T>
T position_at(const BasicTrajectory<T>& traj, const T& t) {
  const auto& pts = traj.breakpoints();
  std::size_t k = detail::segment_at(pts, t);
  if (k + 1 >= pts.size()) return pts.back().position;
  return detail::interpolate(pts[k], pts[k + 1], t);
}

/// Sign of the velocity just after `t`: +1 rightward, -1 leftward, 0 at rest.
template <typename T>
int direction_after(const BasicTrajectory<T>& traj, const T& t) {
  const auto& pts = traj.breakpoints();
  std::size_t k = detail::segment_at(pts, t);
  if (k + 1 >= pts.size()) return 0;
  const T& from = pts[k].position;
  const T& to = pts[k + 1].position;
  return to > from ? 1 : (to < from ? -1 : 0);
}

/// Earliest t >= not_before with position_at(traj, t) == loc. A trajectory rests at
/// its final position forever, so a final position equal to loc always yields a time.
template <typename T>
std::optional<T> first_service_time(const BasicTrajectory<T>& traj, const T& loc, const T& not_before) {
  const auto& pts = traj.breakpoints();
  std::size_t k = detail::segment_at(pts, not_before);
  if (k + 1 >= pts.size()) {
    if (pts.back().position == loc) return max_of(not_before, pts.back().time);
    return std::nullopt;
  }
  T start_time = max_of(not_before, pts[k].time);
  T start_pos = detail::interpolate(pts[k], pts[k + 1], start_time);
  for (; k + 1 < pts.size(); ++k) {
    const auto& end = pts[k + 1];
    if (start_pos == loc) return start_time;
    bool between = (start_pos < loc && loc <= end.position) || (end.position <= loc && loc < start_pos);
    if (between) {
      T span = end.time - start_time;
      T dist = abs(end.position - start_pos);
      T need = abs(loc - start_pos);
      if (span == dist) return start_time + need;  // unit speed
      return start_time + need * (span / dist);
    }
    start_time = end.time;
    start_pos = end.position;
  }
  if (start_pos == loc) return start_time;
  return std::nullopt;
}

/// Exact check that every segment respects |dpos| <= dt.
template <typename T>
bool respects_unit_speed(const BasicTrajectory<T>& traj) {
  const auto& pts = traj.breakpoints();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (abs(pts[i].position - pts[i - 1].position) > pts[i].time - pts[i - 1].time) return false;
    if (!(pts[i - 1].time < pts[i].time)) return false;
  }
  return true;
}

/// Converts a trajectory between number types that embed into each other.
template <typename To, typename From>
BasicTrajectory<To> convert_trajectory(const BasicTrajectory<From>& traj) {
  std::vector<BasicBreakpoint<To>> pts;
  pts.reserve(traj.breakpoints().size());
  for (const auto& b : traj.breakpoints()) pts.push_back({To(b.time), To(b.position)});
  return BasicTrajectory<To>(std::move(pts));
}

}  // namespace trp
