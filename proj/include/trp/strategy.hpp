#pragma once

// Strategy contract and the concrete strategies.

#include <trp/core.hpp>
#include <trp/offline.hpp>
#include <trp/online.hpp>
#include <trp/trajectory.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace trp {

/// What a strategy may know at time 0. Predicted locations are present only in
/// the prediction model.
class VisibleInfo {
 public:
  VisibleInfo(LineSegment line, Model model, std::optional<std::vector<Scalar>> predicted)
      : line_(std::move(line)), model_(model), predicted_(std::move(predicted)) {}

  /// Strips everything a strategy must not see at time 0.
  static VisibleInfo of(const Instance& inst) {
    if (inst.model() == Model::Original) return {inst.line(), Model::Original, std::nullopt};
    return {inst.line(), Model::Prediction, inst.predicted_locations()};
  }

  const LineSegment& line() const { return line_; }
  Model model() const { return model_; }
  bool has_predictions() const { return predicted_.has_value(); }
  const std::vector<Scalar>& predictions() const {
    if (!predicted_) throw Error("predicted locations are hidden in the original model");
    return *predicted_;
  }

 private:
  LineSegment line_;
  Model model_;
  std::optional<std::vector<Scalar>> predicted_;
};

/// A request revealed at its arrival time.
struct Arrival {
  std::size_t id;
  Scalar location;
  Scalar time;
};

/// A deterministic online server. Fixed-path strategies ignore arrivals; adaptive
/// ones may change their motion after `time` when told of an arrival, but never before.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual bool adaptive() const { return false; }
  virtual void init(const VisibleInfo& info) = 0;
  virtual void on_arrival(const Arrival&) {}
  /// Motion on [0, horizon] given what has been revealed so far.
  virtual Trajectory trajectory(const QuadraticScalar& horizon) const = 0;
};

using StrategyFactory = std::function<std::unique_ptr<Strategy>()>;

class HalfLineStrategy : public Strategy {
 public:
  explicit HalfLineStrategy(QuadraticScalar alpha = default_alpha()) : alpha_(std::move(alpha)) {}
  std::string name() const override { return "halfline"; }
  void init(const VisibleInfo& info) override {
    if (!info.line().is_half_line()) throw Error("halfline strategy needs a half-line");
    line_.emplace(info.line());
  }
  Trajectory trajectory(const QuadraticScalar& horizon) const override {
    if (!line_) throw Error("strategy not initialised");
    return halfline_roundtrip_trajectory(*line_, alpha_, horizon);
  }

 private:
  QuadraticScalar alpha_;
  std::optional<LineSegment> line_;
};

class PerfectPredictionStrategy : public Strategy {
 public:
  explicit PerfectPredictionStrategy(QuadraticScalar alpha = default_alpha()) : alpha_(std::move(alpha)) {}
  std::string name() const override { return "perfect"; }
  void init(const VisibleInfo& info) override {
    if (info.model() != Model::Prediction) throw Error("perfect strategy needs the prediction model");
    const auto& predicted = info.predictions();
    if (predicted.empty()) throw Error("empty prediction set");
    vertices_ = optimal_latency_tour(predicted).tour.vertices();
  }
  Trajectory trajectory(const QuadraticScalar& horizon) const override {
    if (vertices_.empty()) throw Error("strategy not initialised");
    return roundtrip_along_path(vertices_, RoundTripSchedule(alpha_), horizon);
  }

 private:
  QuadraticScalar alpha_;
  std::vector<Scalar> vertices_;
};

class RobustPredictionStrategy : public Strategy {
 public:
  RobustPredictionStrategy(QuadraticScalar alpha, Scalar delta) : alpha_(std::move(alpha)), delta_(std::move(delta)) {}
  std::string name() const override { return "robust"; }
  void init(const VisibleInfo& info) override {
    if (info.model() != Model::Prediction) throw Error("robust strategy needs the prediction model");
    if (delta_ >= info.line().length()) throw Error("prediction error must be below the line length");
    if (select_algorithm(delta_, info.line()) == Selection::Fallback) {
      throw Error("prediction error at or above the fallback threshold");
    }
    vertices_ = robust_tour(info.predictions(), delta_, info.line()).vertices();
  }
  Trajectory trajectory(const QuadraticScalar& horizon) const override {
    if (vertices_.empty()) throw Error("strategy not initialised");
    return roundtrip_along_path(vertices_, RoundTripSchedule(alpha_, Scalar(4 * delta_)), horizon);
  }
  const Scalar& delta() const { return delta_; }

 private:
  QuadraticScalar alpha_;
  Scalar delta_;
  std::vector<Scalar> vertices_;
};

/// Replans at every arrival: serves all known unserved requests with the
/// latency-optimal tour from the current position, then idles. No proven ratio.
class GreedyReplanStrategy : public Strategy {
 public:
  std::string name() const override { return "greedy"; }
  bool adaptive() const override { return true; }
  void init(const VisibleInfo&) override {
    plan_ = BasicTrajectory<Scalar>();
    known_.clear();
  }
  void on_arrival(const Arrival& a) override {
    const Scalar& now = a.time;
    Scalar here = position_at(plan_, now);
    plan_.truncate(now);
    plan_.hold_until(now);
    known_.push_back(a);
    std::vector<Scalar> outstanding;
    for (const auto& k : known_) {
      auto served = first_service_time(plan_, k.location, k.time);
      if (!served || *served > now) outstanding.push_back(k.location - here);
    }
    if (outstanding.empty()) return;
    for (const auto& p : optimal_latency_tour(outstanding).tour.turning_points) plan_.move_to(here + p);
  }
  Trajectory trajectory(const QuadraticScalar& horizon) const override {
    Trajectory traj = convert_trajectory<QuadraticScalar>(plan_);
    traj.hold_until(horizon);
    traj.truncate(horizon);
    return traj;
  }

 private:
  BasicTrajectory<Scalar> plan_;
  std::vector<Arrival> known_;
};

/// Robust traversal below the error threshold, otherwise a pluggable fallback.
class ThresholdSelectingStrategy : public Strategy {
 public:
  ThresholdSelectingStrategy(QuadraticScalar alpha, Scalar delta, StrategyFactory fallback)
      : alpha_(std::move(alpha)), delta_(std::move(delta)), fallback_(std::move(fallback)) {}
  std::string name() const override { return "robust"; }
  bool adaptive() const override { return active_ && active_->adaptive(); }
  void init(const VisibleInfo& info) override {
    selection_ = select_algorithm(delta_, info.line());
    if (selection_ == Selection::Robust) {
      active_ = std::make_unique<RobustPredictionStrategy>(alpha_, delta_);
    } else {
      active_ = fallback_();
    }
    active_->init(info);
  }
  void on_arrival(const Arrival& a) override { active_->on_arrival(a); }
  Trajectory trajectory(const QuadraticScalar& horizon) const override { return active_->trajectory(horizon); }
  Selection selection() const { return selection_; }

 private:
  QuadraticScalar alpha_;
  Scalar delta_;
  StrategyFactory fallback_;
  std::unique_ptr<Strategy> active_;
  Selection selection_ = Selection::Robust;
};

struct StrategyOptions {
  QuadraticScalar alpha = default_alpha();
  Scalar delta = 0;  // absolute prediction error, used by `robust`
};

/// `halfline`, `perfect`, `robust` (threshold-selected, greedy fallback) or `greedy`.
inline std::unique_ptr<Strategy> make_strategy(const std::string& name, const StrategyOptions& opts = {}) {
  if (name == "halfline") return std::make_unique<HalfLineStrategy>(opts.alpha);
  if (name == "perfect") return std::make_unique<PerfectPredictionStrategy>(opts.alpha);
  if (name == "robust") {
    return std::make_unique<ThresholdSelectingStrategy>(
        opts.alpha, opts.delta, [] { return std::make_unique<GreedyReplanStrategy>(); });
  }
  if (name == "greedy") return std::make_unique<GreedyReplanStrategy>();
  throw Error("unknown strategy '" + name + "'");
}

inline StrategyFactory strategy_factory(const std::string& name, const StrategyOptions& opts = {}) {
  make_strategy(name, opts);  // validate the name eagerly
  return [name, opts] { return make_strategy(name, opts); };
}

}  // namespace trp
