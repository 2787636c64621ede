#pragma once

// Round-trip planners: the half-line strategy, prediction-guided tour traversal,
// and its error-padded variant, plus the error-threshold selector.

#include <trp/core.hpp>
#include <trp/offline.hpp>
#include <trp/quadratic.hpp>
#include <trp/trajectory.hpp>

#include <cstddef>
#include <vector>

namespace trp {

/// The ratio-optimal trip growth parameter sqrt(3)/2.
inline QuadraticScalar default_alpha() { return {Scalar(0), Scalar(1, 2)}; }

/// max{2 + 2a, (5 + 6a) / (1 + 2a)}: the proven per-request ratio of the
/// round-trip schedule with parameter a. Equals 2 + sqrt3 at a = sqrt3/2.
inline QuadraticScalar roundtrip_ratio_bound(const QuadraticScalar& alpha) {
  QuadraticScalar one(1);
  QuadraticScalar first = QuadraticScalar(2) + QuadraticScalar(2) * alpha;
  QuadraticScalar second = (QuadraticScalar(5) + QuadraticScalar(6) * alpha) / (one + QuadraticScalar(2) * alpha);
  return max_of(first, second);
}

/// Trip j (1-based) runs out to reach(j) and back. With c = 2 + 2a:
///   reach(1) = c/2 + pad/2,  reach(j) = c^(j-1) (1 + 2a) / 2 + pad/2.
class RoundTripSchedule {
 public:
  explicit RoundTripSchedule(QuadraticScalar alpha, Scalar pad = Scalar(0))
      : alpha_(std::move(alpha)), pad_(std::move(pad)) {
    if (alpha_.sign() <= 0) throw Error("alpha must be positive");
    if (sgn(pad_) < 0) throw Error("pad must be non-negative");
    growth_ = QuadraticScalar(2) + QuadraticScalar(2) * alpha_;
  }

  const QuadraticScalar& alpha() const { return alpha_; }
  const Scalar& pad() const { return pad_; }
  /// 2 + 2a
  const QuadraticScalar& growth() const { return growth_; }

  QuadraticScalar reach(std::size_t j) const {
    if (j == 0) throw Error("trips are numbered from 1");
    QuadraticScalar half_pad(Scalar(pad_ / 2));
    if (j == 1) return growth_ / QuadraticScalar(2) + half_pad;
    while (powers_.size() < j) {
      powers_.push_back(powers_.empty() ? QuadraticScalar(1) : powers_.back() * growth_);
    }
    return powers_[j - 1] * (QuadraticScalar(1) + QuadraticScalar(2) * alpha_) / QuadraticScalar(2) + half_pad;
  }
  QuadraticScalar trip_length(std::size_t j) const { return QuadraticScalar(2) * reach(j); }

 private:
  QuadraticScalar alpha_;
  Scalar pad_;
  QuadraticScalar growth_;
  mutable std::vector<QuadraticScalar> powers_;
};

/// Runs round trips along a polyline path from the origin, measuring reach in
/// arc-length and retracing the path home after each turnaround. Once a trip's
/// reach covers the whole path the server walks to its end and then sweeps
/// between the path's two extremes until the horizon.
inline Trajectory roundtrip_along_path(const std::vector<Scalar>& vertices, const RoundTripSchedule& schedule,
                                       const QuadraticScalar& horizon) {
  if (horizon.sign() < 0) throw Error("negative horizon");
  Trajectory traj;
  if (vertices.size() <= 1) {
    traj.hold_until(horizon);
    return traj;
  }
  std::vector<Scalar> arcs{Scalar(0)};
  Scalar lo(0), hi(0);
  for (std::size_t k = 1; k < vertices.size(); ++k) {
    arcs.push_back(arcs.back() + abs_diff(vertices[k], vertices[k - 1]));
    lo = vertices[k] < lo ? vertices[k] : lo;
    hi = max_of(hi, vertices[k]);
  }
  const QuadraticScalar total(arcs.back());

  for (std::size_t j = 1; traj.end_time() < horizon; ++j) {
    QuadraticScalar reach = schedule.reach(j);
    if (reach >= total) {
      for (std::size_t k = 1; k < vertices.size(); ++k) traj.move_to(QuadraticScalar(vertices[k]));
      QuadraticScalar far_side(vertices.back() == hi ? lo : hi);
      QuadraticScalar near_side(vertices.back());
      while (traj.end_time() < horizon) {
        traj.move_to(far_side);
        traj.move_to(near_side);
      }
      break;
    }
    std::size_t k = 0;
    while (k + 1 < vertices.size() && QuadraticScalar(arcs[k + 1]) <= reach) {
      ++k;
      traj.move_to(QuadraticScalar(vertices[k]));
    }
    if (QuadraticScalar(arcs[k]) < reach) {
      QuadraticScalar step = reach - QuadraticScalar(arcs[k]);
      QuadraticScalar turn = vertices[k + 1] > vertices[k] ? QuadraticScalar(vertices[k]) + step
                                                           : QuadraticScalar(vertices[k]) - step;
      traj.move_to(turn);
    }
    for (std::size_t back = k + 1; back-- > 0;) traj.move_to(QuadraticScalar(vertices[back]));
  }
  traj.truncate(horizon);
  return traj;
}

/// Back-to-back round trips on a half-line, clamped at its far end.
inline Trajectory halfline_roundtrip_trajectory(const LineSegment& line, const QuadraticScalar& alpha,
                                                const QuadraticScalar& horizon) {
  if (!line.is_half_line()) throw Error("line is not a half-line");
  return roundtrip_along_path({Scalar(0), line.far_end()}, RoundTripSchedule(alpha), horizon);
}

/// Latency-optimal tour over predicted locations, traversed with round trips in arc-length.
inline Trajectory perfect_prediction_trajectory(const std::vector<Scalar>& predicted, const QuadraticScalar& alpha,
                                                const QuadraticScalar& horizon) {
  if (predicted.empty()) throw Error("empty prediction set");
  Tour tour = optimal_latency_tour(predicted).tour;
  return roundtrip_along_path(tour.vertices(), RoundTripSchedule(alpha), horizon);
}

/// Moves each prediction `delta` toward the origin, stopping at the origin.
inline std::vector<Scalar> shrink_toward_origin(const std::vector<Scalar>& predicted, const Scalar& delta) {
  std::vector<Scalar> out;
  out.reserve(predicted.size());
  for (const auto& p : predicted) {
    Scalar m = abs(p) - delta;
    if (sgn(m) <= 0) {
      out.emplace_back(0);
    } else {
      out.push_back(sgn(p) < 0 ? Scalar(-m) : m);
    }
  }
  return out;
}

/// Pushes every turning point 2*delta away from the origin, clamps to the line,
/// drops turning points made redundant by clamping, and adds a short first
/// excursion to any side the tour skips but a prediction error interval reaches.
inline Tour pad_tour(const Tour& shrunk, const Scalar& delta, const LineSegment& line,
                     const std::vector<Scalar>& predicted) {
  std::vector<Scalar> pts;
  for (const auto& p : shrunk.turning_points) {
    Scalar q = sgn(p) < 0 ? Scalar(p - 2 * delta) : Scalar(p + 2 * delta);
    if (q < line.left()) q = line.left();
    if (q > line.right()) q = line.right();
    pts.push_back(q);
  }
  // After clamping a turning point can match the previous one on its side.
  for (std::size_t k = 2; k < pts.size();) {
    if (abs(pts[k]) <= abs(pts[k - 2])) {
      if (k + 1 == pts.size()) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(k - 1), pts.begin() + static_cast<std::ptrdiff_t>(k + 1));
        k = std::max<std::size_t>(k - 1, 2);
      }
      continue;
    }
    ++k;
  }

  Scalar need_lo(0), need_hi(0);
  for (const auto& p : predicted) {
    Scalar lo = p - delta, hi = p + delta;
    if (lo < line.left()) lo = line.left();
    if (hi > line.right()) hi = line.right();
    if (lo < need_lo) need_lo = lo;
    need_hi = max_of(need_hi, hi);
  }
  // Predictions within delta of the origin vanish when shrunk; their error
  // interval may reach a side the padded tour does not visit. Padded turning
  // points lie at least min(2 delta, line end) out, so only an unvisited side
  // needs a short leading excursion.
  auto extend = [&pts](const Scalar& need, int side) {
    if (sgn(need) == 0) return;
    for (const auto& p : pts) {
      if (sgn(p) == side) return;
    }
    pts.insert(pts.begin(), need);
  };
  extend(need_hi, 1);
  extend(need_lo, -1);
  return make_tour(std::move(pts));
}

/// The padded tour used by the error-robust strategy.
inline Tour robust_tour(const std::vector<Scalar>& predicted, const Scalar& delta, const LineSegment& line) {
  if (predicted.empty()) throw Error("empty prediction set");
  Tour shrunk = optimal_latency_tour(shrink_toward_origin(predicted, delta)).tour;
  return pad_tour(shrunk, delta, line, predicted);
}

enum class Selection { Robust, Fallback };

inline std::string to_string(Selection s) { return s == Selection::Robust ? "robust" : "fallback"; }

/// (2 - sqrt3) / 4 ~ 0.066987: the relative error where 2 + sqrt3 + 4*delta reaches 4.
/// Commonly quoted rounded to 0.067.
inline QuadraticScalar fallback_threshold() { return {Scalar(1, 2), Scalar(-1, 4)}; }

/// Fallback iff delta >= threshold * |L|.
inline Selection select_algorithm(const QuadraticScalar& delta, const LineSegment& line) {
  if (delta.sign() < 0) throw Error("negative prediction error");
  return delta >= fallback_threshold() * QuadraticScalar(line.length()) ? Selection::Fallback : Selection::Robust;
}

inline Selection select_algorithm(const Scalar& delta, const LineSegment& line) {
  return select_algorithm(QuadraticScalar(delta), line);
}

/// Error-padded tour traversal with trips |RT_1| = 2 + 2a + 4*delta and
/// |RT_j| = (2 + 2a)^(j-1) (1 + 2a) + 4*delta.
inline Trajectory robust_prediction_trajectory(const std::vector<Scalar>& predicted, const LineSegment& line,
                                               const QuadraticScalar& alpha, const Scalar& delta,
                                               const QuadraticScalar& horizon) {
  if (sgn(delta) < 0) throw Error("negative prediction error");
  if (delta >= line.length()) throw Error("prediction error must be below the line length");
  if (select_algorithm(delta, line) == Selection::Fallback) {
    throw Error("prediction error at or above the fallback threshold");
  }
  Tour tour = robust_tour(predicted, delta, line);
  return roundtrip_along_path(tour.vertices(), RoundTripSchedule(alpha, Scalar(4 * delta)), horizon);
}

}  // namespace trp
