#pragma once

// The adaptive lower-bound game on the half-line [0, 10].

#include <trp/core.hpp>
#include <trp/strategy.hpp>
#include <trp/trajectory.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace trp {

struct GameConfig {
  std::vector<Scalar> base_locations{1, 4, 5, 6, 7, 8, 9, 10};
  std::vector<Scalar> epsilon_values{make_scalar(1, 1000), make_scalar(2, 1000), make_scalar(3, 1000)};
  /// Service deadline of a request is this multiple of its OPT lower bound.
  Scalar deadline_factor = 3;
  /// Safety cap on the number of integer steps played.
  long max_steps = 1000;

  LineSegment line() const { return LineSegment(0, 10); }
  void validate() const;
};

inline void GameConfig::validate() const {
  if (std::find(base_locations.begin(), base_locations.end(), Scalar(1)) == base_locations.end()) {
    throw Error("game needs a base request at 1");
  }
  for (const auto& l : base_locations) {
    if (sgn(l) <= 0 || l > 10) throw Error("base locations must lie in (0, 10]");
  }
  if (epsilon_values.empty()) throw Error("game needs epsilon requests");
  for (std::size_t i = 0; i < epsilon_values.size(); ++i) {
    const Scalar& e = epsilon_values[i];
    if (sgn(e) <= 0 || e >= 1) throw Error("epsilon values must lie in (0, 1)");
    for (std::size_t j = 0; j < i; ++j) {
      if (epsilon_values[j] == e) throw Error("epsilon values must be distinct");
    }
  }
  if (sgn(deadline_factor) <= 0) throw Error("deadline factor must be positive");
}

/// A request of the game: base requests arrive at 0, epsilon requests when released.
struct GameRequest {
  std::size_t id;
  Scalar location;
  Scalar arrival;
  bool epsilon;

  /// max{location, arrival}
  Scalar opt_lower_bound() const { return max_of(location, arrival); }
  friend bool operator==(const GameRequest&, const GameRequest&) = default;
};

struct Observation {
  long step;
  QuadraticScalar position;
  friend bool operator==(const Observation&, const Observation&) = default;
};

struct Release {
  long step;
  std::size_t request;
  friend bool operator==(const Release&, const Release&) = default;
};

struct Witness {
  std::size_t request;
  long detected_at;   // step where the deadline check fired
  Scalar deadline;
  std::optional<QuadraticScalar> completion;  // empty if never served
  QuadraticScalar ratio;                      // exact, or a certified lower bound without completion
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct GameTranscript {
  std::string strategy;
  std::vector<GameRequest> requests;
  std::vector<Observation> observations;
  std::vector<Release> releases;
  std::optional<Witness> witness;
  QuadraticScalar max_ratio;
  bool escaped = false;
  Trajectory trajectory;

  friend bool operator==(const GameTranscript&, const GameTranscript&) = default;
};

class NondeterministicStrategy : public Error {
 public:
  using Error::Error;
};

class WitnessMismatch : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::optional<QuadraticScalar> served_at(const Trajectory& traj, const GameRequest& r) {
  return first_service_time(traj, QuadraticScalar(r.location), QuadraticScalar(r.arrival));
}

/// Extends the strategy's motion until request `r` is served, or gives up.
inline std::pair<Trajectory, std::optional<QuadraticScalar>> continue_until_served(const Strategy& strategy,
                                                                                   const GameRequest& r,
                                                                                   QuadraticScalar horizon) {
  for (int attempt = 0; attempt < 24; ++attempt) {
    Trajectory traj = strategy.trajectory(horizon);
    if (auto t = served_at(traj, r)) return {traj, t};
    horizon = horizon * QuadraticScalar(2);
  }
  return {strategy.trajectory(horizon), std::nullopt};
}

}  // namespace detail

/// One play of the game. Rules, checked at each integer step s:
///   R4 a request whose deadline (factor x OPT lower bound) has passed unserved is the witness;
///   R1 the first epsilon request is released once the server has reached location 1;
///   R2/R3 each further epsilon request is released at the first step after the previous
///   one was served where the server is at or beyond 1 and moving right.
/// The game ends on a witness, or after the last base deadline once nothing is outstanding.
inline GameTranscript play_lowerbound_game_once(Strategy& strategy, const GameConfig& config = {}) {
  config.validate();
  const LineSegment line = config.line();
  GameTranscript out;
  out.strategy = strategy.name();

  std::vector<Scalar> predicted = config.base_locations;
  predicted.insert(predicted.end(), config.epsilon_values.begin(), config.epsilon_values.end());
  strategy.init(VisibleInfo(line, Model::Prediction, predicted));

  for (const auto& l : config.base_locations) {
    out.requests.push_back({out.requests.size(), l, Scalar(0), false});
    strategy.on_arrival({out.requests.back().id, l, Scalar(0)});
  }
  const std::size_t first_request = static_cast<std::size_t>(
      std::find(config.base_locations.begin(), config.base_locations.end(), Scalar(1)) - config.base_locations.begin());
  Scalar last_base_deadline(0);
  for (const auto& l : config.base_locations) last_base_deadline = max_of(last_base_deadline, config.deadline_factor * l);

  std::vector<Trajectory> committed;
  std::size_t next_epsilon = 0;
  Trajectory traj;
  long step = 0;
  for (;; ++step) {
    if (step > config.max_steps) throw Error("game exceeded " + std::to_string(config.max_steps) + " steps");
    const QuadraticScalar now{Scalar(step)};
    traj = strategy.trajectory(now + QuadraticScalar(1));
    if (!traj.within(line)) throw Error("strategy left the half-line [0, 10]");
    for (const auto& prefix : committed) {
      Trajectory cut = traj;
      cut.truncate(prefix.end_time());
      cut.hold_until(prefix.end_time());
      if (!(cut == prefix)) throw Error("strategy " + strategy.name() + " changed its motion before a release");
    }
    out.observations.push_back({step, position_at(traj, now)});

    for (const auto& r : out.requests) {
      Scalar deadline = config.deadline_factor * r.opt_lower_bound();
      if (Scalar(step) < deadline) continue;
      auto t = detail::served_at(traj, r);
      if (t && *t <= QuadraticScalar(deadline)) continue;
      out.witness = Witness{r.id, step, deadline, std::nullopt, QuadraticScalar(0)};
      break;
    }
    if (out.witness) break;

    bool release = false;
    if (next_epsilon < config.epsilon_values.size()) {
      if (next_epsilon == 0) {
        auto t = detail::served_at(traj, out.requests[first_request]);
        release = t && *t <= now;
      } else {
        auto t = detail::served_at(traj, out.requests.back());
        release = t && *t < now && out.observations.back().position >= QuadraticScalar(1) &&
                  direction_after(traj, now) > 0;
      }
    }
    if (release) {
      Trajectory prefix = traj;
      prefix.truncate(now);
      prefix.hold_until(now);
      committed.push_back(std::move(prefix));
      const Scalar& e = config.epsilon_values[next_epsilon++];
      out.requests.push_back({out.requests.size(), e, Scalar(step), true});
      out.releases.push_back({step, out.requests.back().id});
      strategy.on_arrival({out.requests.back().id, e, Scalar(step)});
      continue;
    }

    if (Scalar(step) >= last_base_deadline) {
      bool outstanding = false;
      for (const auto& r : out.requests) {
        auto t = detail::served_at(traj, r);
        if (!t || *t > now) outstanding = true;
      }
      if (!outstanding) break;
    }
  }

  const QuadraticScalar end{Scalar(step)};
  if (out.witness) {
    Witness& w = *out.witness;
    const GameRequest& r = out.requests[w.request];
    auto [full, done] = detail::continue_until_served(strategy, r, max_of(end, QuadraticScalar(1)) * QuadraticScalar(2));
    QuadraticScalar lb(r.opt_lower_bound());
    if (done) {
      w.completion = done;
      w.ratio = *done / lb;
      full.truncate(max_of(*done, end));
      full.hold_until(max_of(*done, end));
    } else {
      full.truncate(end);
      QuadraticScalar dl(w.deadline);
      w.ratio = (dl + abs(position_at(full, dl) - QuadraticScalar(r.location))) / lb;
    }
    out.trajectory = std::move(full);
    out.max_ratio = w.ratio;
    return out;
  }

  traj.truncate(end);
  out.trajectory = traj;
  out.max_ratio = QuadraticScalar(0);
  std::optional<std::size_t> worst;
  for (const auto& r : out.requests) {
    QuadraticScalar ratio = *detail::served_at(traj, r) / QuadraticScalar(r.opt_lower_bound());
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      worst = r.id;
    }
  }
  if (out.max_ratio > QuadraticScalar(config.deadline_factor)) {
    const GameRequest& r = out.requests[*worst];
    out.witness = Witness{r.id, step, config.deadline_factor * r.opt_lower_bound(), detail::served_at(traj, r),
                          out.max_ratio};
  } else {
    out.escaped = true;
  }
  return out;
}

/// Plays the game twice with fresh strategies and insists on identical transcripts.
inline GameTranscript play_lowerbound_game(const StrategyFactory& factory, const GameConfig& config = {}) {
  auto first = factory();
  GameTranscript a = play_lowerbound_game_once(*first, config);
  auto second = factory();
  GameTranscript b = play_lowerbound_game_once(*second, config);
  if (!(a == b)) throw NondeterministicStrategy("strategy " + a.strategy + " produced different transcripts on replay");
  return a;
}

/// Recomputes the witness ratio from the recorded trajectory and checks it exceeds
/// the deadline factor.
inline QuadraticScalar verify_witness(const GameTranscript& tr, const Scalar& factor = 3) {
  if (!tr.witness) throw Error("transcript has no witness");
  const Witness& w = *tr.witness;
  if (w.request >= tr.requests.size()) throw WitnessMismatch("witness names an unknown request");
  const GameRequest& r = tr.requests[w.request];
  const QuadraticScalar loc(r.location);
  const QuadraticScalar lb(max_of(r.location, r.arrival));
  QuadraticScalar ratio;
  if (w.completion) {
    auto t = first_service_time(tr.trajectory, loc, QuadraticScalar(r.arrival));
    if (!t || *t != *w.completion) throw WitnessMismatch("recorded completion does not match the trajectory");
    ratio = *t / lb;
  } else {
    const QuadraticScalar dl(w.deadline);
    if (tr.trajectory.end_time() < dl) throw WitnessMismatch("trajectory ends before the deadline");
    if (auto t = first_service_time(tr.trajectory, loc, QuadraticScalar(r.arrival)); t && *t <= dl) {
      throw WitnessMismatch("witness was served before its deadline");
    }
    ratio = (dl + abs(position_at(tr.trajectory, dl) - loc)) / lb;
  }
  if (ratio != w.ratio) throw WitnessMismatch("recomputed ratio " + ratio.str() + " differs from " + w.ratio.str());
  if (!(ratio > QuadraticScalar(factor))) throw WitnessMismatch("witness ratio " + ratio.str() + " is not above " + factor.get_str());
  return ratio;
}

inline std::string request_label(const GameRequest& r) {
  return (r.epsilon ? "eps@" : "r@") + to_string(r.location);
}

/// Ordered text log of the game.
inline void write_transcript_log(std::ostream& os, const GameTranscript& tr) {
  os << "strategy " << tr.strategy << "\n";
  std::size_t next = 0;
  for (const auto& o : tr.observations) {
    os << "step " << o.step << " position " << o.position.str() << " (" << to_decimal(o.position) << ")";
    while (next < tr.releases.size() && tr.releases[next].step == o.step) {
      os << " release " << request_label(tr.requests[tr.releases[next].request]);
      ++next;
    }
    if (tr.witness && tr.witness->detected_at == o.step) os << " witness " << request_label(tr.requests[tr.witness->request]);
    os << "\n";
  }
  if (tr.witness) {
    const Witness& w = *tr.witness;
    os << "witness " << request_label(tr.requests[w.request]) << " deadline " << to_string(w.deadline) << " completion "
       << (w.completion ? w.completion->str() : std::string("none")) << " ratio " << w.ratio.str() << " ("
       << to_decimal(w.ratio) << ")\n";
  } else {
    os << "escaped with max ratio " << tr.max_ratio.str() << " (" << to_decimal(tr.max_ratio) << ")\n";
  }
}

/// CSV with columns step, position, position_decimal, action; one row per step and action.
inline void write_transcript_csv(std::ostream& os, const GameTranscript& tr) {
  os << "step,position,position_decimal,action\n";
  std::size_t next = 0;
  for (const auto& o : tr.observations) {
    std::vector<std::string> actions;
    while (next < tr.releases.size() && tr.releases[next].step == o.step) {
      actions.push_back("release " + request_label(tr.requests[tr.releases[next].request]));
      ++next;
    }
    if (tr.witness && tr.witness->detected_at == o.step) {
      actions.push_back("witness " + request_label(tr.requests[tr.witness->request]));
    }
    if (actions.empty()) actions.emplace_back();
    for (const auto& a : actions) {
      os << o.step << "," << o.position.str() << "," << to_decimal(o.position) << "," << a << "\n";
    }
  }
}

}  // namespace trp
