#pragma once

// Runs a strategy against an instance and scores it exactly.

#include <trp/core.hpp>
#include <trp/offline.hpp>
#include <trp/online.hpp>
#include <trp/strategy.hpp>
#include <trp/trajectory.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace trp {

struct RequestOutcome {
  std::size_t id = 0;
  QuadraticScalar completion;
  Scalar opt_lower_bound;  // max{|actual|, arrival}
  QuadraticScalar ratio;
  Scalar tour_lower_bound;  // max{arc-length along the offline tour, arrival}
  QuadraticScalar tour_ratio;
};

struct ServiceReport {
  std::vector<RequestOutcome> requests;
  QuadraticScalar on_sum;
  Scalar opt_sum_lower_bound;
  QuadraticScalar max_request_ratio;
  QuadraticScalar max_tour_ratio;
  QuadraticScalar sum_ratio;
};

enum class EventKind { Arrival, Service, Turnaround };

inline std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::Arrival: return "arrival";
    case EventKind::Service: return "service";
    case EventKind::Turnaround: return "turnaround";
  }
  return "?";
}

struct Event {
  QuadraticScalar time;
  EventKind kind;
  std::optional<std::size_t> request;  // empty for turnarounds
  QuadraticScalar position;
  friend bool operator==(const Event&, const Event&) = default;
};

struct RunResult {
  ServiceReport report;
  Trajectory trajectory;  // truncated at the last completion
  std::vector<Event> events;
};

class UncoveredRequest : public Error {
 public:
  UncoveredRequest(std::size_t id, const QuadraticScalar& horizon)
      : Error("request " + std::to_string(id) + " not served within horizon " + horizon.str()), id_(id) {}
  std::size_t id() const { return id_; }

 private:
  std::size_t id_;
};

namespace detail {

/// completion / bound with 0/0 taken as 1.
inline QuadraticScalar ratio_or_one(const QuadraticScalar& completion, const Scalar& bound) {
  if (sgn(bound) == 0) {
    if (completion.sign() != 0) throw Error("positive completion over a zero bound");
    return QuadraticScalar(1);
  }
  return completion / QuadraticScalar(bound);
}

inline std::vector<std::optional<QuadraticScalar>> completions(const Trajectory& traj, const Instance& inst) {
  std::vector<std::optional<QuadraticScalar>> out;
  out.reserve(inst.size());
  for (const auto& r : inst.requests()) {
    out.push_back(first_service_time(traj, QuadraticScalar(r.actual_loc), QuadraticScalar(r.arrival_time)));
  }
  return out;
}

}  // namespace detail

/// Scores a trajectory: completion = first visit of the actual location at or
/// after arrival. A pure function of (trajectory, instance).
inline ServiceReport evaluate(const Trajectory& traj, const Instance& inst) {
  ServiceReport rep;
  auto done = detail::completions(traj, inst);
  Tour offline = optimal_latency_tour(inst.actual_locations()).tour;
  auto bounds = opt_request_lower_bound(inst, offline);
  rep.max_request_ratio = QuadraticScalar(0);
  rep.max_tour_ratio = QuadraticScalar(0);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!done[i]) throw UncoveredRequest(i, traj.end_time());
    RequestOutcome o;
    o.id = i;
    o.completion = *done[i];
    o.opt_lower_bound = bounds[i].metric_free;
    o.tour_lower_bound = bounds[i].tour_bound;
    o.ratio = detail::ratio_or_one(o.completion, o.opt_lower_bound);
    o.tour_ratio = detail::ratio_or_one(o.completion, o.tour_lower_bound);
    rep.on_sum += o.completion;
    rep.max_request_ratio = max_of(rep.max_request_ratio, o.ratio);
    rep.max_tour_ratio = max_of(rep.max_tour_ratio, o.tour_ratio);
    rep.requests.push_back(std::move(o));
  }
  rep.opt_sum_lower_bound = opt_sum_lower_bound(inst);
  rep.sum_ratio = detail::ratio_or_one(rep.on_sum, rep.opt_sum_lower_bound);
  return rep;
}

inline ServiceReport evaluate(const RunResult& run, const Instance& inst) { return evaluate(run.trajectory, inst); }

/// Interior breakpoints where the direction of motion reverses.
inline std::vector<Event> turnaround_events(const Trajectory& traj) {
  std::vector<Event> out;
  const auto& pts = traj.breakpoints();
  int last_dir = 0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    int dir = (pts[k].position - pts[k - 1].position).sign();
    if (dir == 0) continue;
    if (last_dir != 0 && dir != last_dir) {
      out.push_back({pts[k - 1].time, EventKind::Turnaround, std::nullopt, pts[k - 1].position});
    }
    last_dir = dir;
  }
  return out;
}

struct RunOptions {
  /// Safety cap on horizon doublings.
  int max_doublings = 24;
};

namespace detail {

inline std::pair<QuadraticScalar, QuadraticScalar> visited_range(const Trajectory& traj) {
  QuadraticScalar lo(0), hi(0);
  for (const auto& b : traj.breakpoints()) {
    lo = min_of(lo, b.position);
    hi = max_of(hi, b.position);
  }
  return {lo, hi};
}

}  // namespace detail

/// Discloses arrivals to the strategy in time order and scores the resulting motion.
/// The horizon starts at 4 (|L| + max arrival) and doubles until every request is served.
/// Throws UncoveredRequest once a doubling adds no new ground and a request still lies outside it.
inline RunResult run(const Instance& inst, Strategy& strategy, const RunOptions& opts = {}) {
  strategy.init(VisibleInfo::of(inst));

  std::vector<std::size_t> order(inst.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return inst.requests()[x].arrival_time < inst.requests()[y].arrival_time;
  });

  // Adaptive strategies must not rewrite their past: remember the committed
  // prefix before each disclosure and compare with the final motion.
  std::vector<Trajectory> committed;
  for (std::size_t i : order) {
    const Request& r = inst.requests()[i];
    if (strategy.adaptive()) committed.push_back(strategy.trajectory(QuadraticScalar(r.arrival_time)));
    strategy.on_arrival({r.id, r.actual_loc, r.arrival_time});
  }

  QuadraticScalar horizon(Scalar(4 * (inst.line().length() + inst.max_arrival())));
  std::pair<QuadraticScalar, QuadraticScalar> seen;
  for (int attempt = 0;; ++attempt) {
    Trajectory traj = strategy.trajectory(horizon);
    for (const auto& prefix : committed) {
      Trajectory cut = traj;
      cut.truncate(prefix.end_time());
      cut.hold_until(prefix.end_time());
      if (!(cut == prefix)) throw Error("strategy " + strategy.name() + " changed its motion before an arrival");
    }
    auto done = detail::completions(traj, inst);
    auto missing = std::find_if(done.begin(), done.end(), [](const auto& c) { return !c.has_value(); });
    if (missing != done.end()) {
      auto id = static_cast<std::size_t>(missing - done.begin());
      auto hull = detail::visited_range(traj);
      QuadraticScalar loc(inst.requests()[id].actual_loc);
      bool stalled = attempt > 0 && hull == seen && (loc < hull.first || loc > hull.second);
      if (stalled || attempt >= opts.max_doublings) throw UncoveredRequest(id, horizon);
      seen = hull;
      horizon = horizon * QuadraticScalar(2);
      continue;
    }
    QuadraticScalar last(0);
    for (const auto& c : done) last = max_of(last, *c);
    traj.truncate(last);

    RunResult res;
    res.report = evaluate(traj, inst);
    for (const auto& r : inst.requests()) {
      res.events.push_back({QuadraticScalar(r.arrival_time), EventKind::Arrival, r.id, QuadraticScalar(r.actual_loc)});
    }
    for (const auto& o : res.report.requests) {
      res.events.push_back({o.completion, EventKind::Service, o.id, QuadraticScalar(inst.requests()[o.id].actual_loc)});
    }
    for (auto& e : turnaround_events(traj)) res.events.push_back(std::move(e));
    std::stable_sort(res.events.begin(), res.events.end(), [](const Event& a, const Event& b) {
      if (a.time != b.time) return a.time < b.time;
      return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    res.trajectory = std::move(traj);
    return res;
  }
}

/// Which exact ratio a proven bound applies to.
enum class RatioMetric { MetricFree, TourBased };

struct Certificate {
  QuadraticScalar bound;
  RatioMetric metric;
};

/// The proven per-request bound for a strategy, if any. `relative_error` is
/// delta = Delta / |L| as known to the strategy.
inline std::optional<Certificate> certified_bound(const std::string& strategy, const QuadraticScalar& alpha,
                                                  const Scalar& relative_error) {
  QuadraticScalar base = roundtrip_ratio_bound(alpha);
  if (strategy == "halfline") return Certificate{base, RatioMetric::MetricFree};
  if (strategy == "perfect") {
    if (sgn(relative_error) != 0) return std::nullopt;
    return Certificate{base, RatioMetric::TourBased};
  }
  if (strategy == "robust") {
    if (QuadraticScalar(relative_error) >= fallback_threshold()) return std::nullopt;
    return Certificate{base + QuadraticScalar(Scalar(4 * relative_error)), RatioMetric::MetricFree};
  }
  return std::nullopt;
}

inline const QuadraticScalar& certified_ratio(const ServiceReport& rep, RatioMetric m) {
  return m == RatioMetric::MetricFree ? rep.max_request_ratio : rep.max_tour_ratio;
}

}  // namespace trp
