#pragma once

#include <trp/trp.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace trp::support {

/// A fixed-path strategy that follows a given trajectory and then rests.
class ScriptedStrategy : public Strategy {
 public:
  ScriptedStrategy(std::string name, Trajectory path) : name_(std::move(name)), path_(std::move(path)) {}
  std::string name() const override { return name_; }
  void init(const VisibleInfo&) override {}
  Trajectory trajectory(const QuadraticScalar& horizon) const override {
    Trajectory t = path_;
    t.hold_until(horizon);
    t.truncate(horizon);
    return t;
  }

 private:
  std::string name_;
  Trajectory path_;
};

inline Scalar q(long num, long den = 1) { return make_scalar(num, den); }

inline Trajectory path(std::initializer_list<std::pair<Scalar, Scalar>> points) {
  std::vector<Breakpoint> bp;
  for (const auto& [t, x] : points) bp.push_back({QuadraticScalar(t), QuadraticScalar(x)});
  return Trajectory(std::move(bp));
}

inline Instance at_zero(const LineSegment& line, const std::vector<Scalar>& locations) {
  std::vector<Request> rs;
  for (const auto& l : locations) rs.push_back({0, l, l, Scalar(0)});
  return Instance(line, std::move(rs));
}

}  // namespace trp::support

namespace trp::support {

/// Empty when the tour has strictly growing magnitudes per side, nested segments
/// each containing the origin, and extremes matching the point set; else a reason.
inline std::string tour_structure_violation(const Tour& tour, const std::vector<Scalar>& points) {
  const auto& w = tour.turning_points;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (sgn(w[k]) == 0) return "turning point at origin";
    if (k >= 2 && !(abs(w[k]) > abs(w[k - 2]))) return "magnitude does not grow at " + std::to_string(k);
    if (k >= 1) {
      Scalar lo = w[k] < w[k - 1] ? w[k] : w[k - 1];
      Scalar hi = max_of(w[k], w[k - 1]);
      if (!(lo < 0 && hi > 0)) return "segment " + std::to_string(k) + " misses the origin";
      if (k >= 2) {
        Scalar plo = w[k - 1] < w[k - 2] ? w[k - 1] : w[k - 2];
        Scalar phi = max_of(w[k - 1], w[k - 2]);
        if (!(lo <= plo && phi <= hi)) return "segment " + std::to_string(k) + " does not subsume its predecessor";
      }
    }
  }
  Scalar lo(0), hi(0);
  for (const auto& p : points) {
    lo = p < lo ? p : lo;
    hi = max_of(hi, p);
  }
  if (tour.leftmost() != lo || tour.rightmost() != hi) return "tour extremes differ from the point set";
  std::size_t tail = std::min<std::size_t>(2, w.size());
  for (const Scalar& e : {lo, hi}) {
    if (sgn(e) == 0) continue;
    bool found = false;
    for (std::size_t k = w.size() - tail; k < w.size(); ++k) found = found || w[k] == e;
    if (!found) return "last turning points miss an extreme";
  }
  return "";
}

}  // namespace trp::support
