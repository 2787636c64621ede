#pragma once

// Parallel parameter sweeps with byte-stable CSV output.

#include <trp/generate.hpp>
#include <trp/simulator.hpp>
#include <trp/strategy.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace trp {

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) os << ',';
    os << csv_field(fields[i]);
  }
  os << '\n';
}

struct SweepSpec {
  long trials = 100;
  long min_requests = 1;
  long max_requests = 20;
  /// Relative errors delta = Delta / |L|.
  std::vector<Scalar> deltas{Scalar(0)};
  std::uint64_t seed = 1;
  std::vector<std::string> strategies{"perfect"};
  LineSegment line{-10, 10};
  long max_arrival = 50;
  long grid = 100;
  QuadraticScalar alpha = default_alpha();
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (trials < 1) throw Error("trials must be positive");
    if (min_requests < 1 || max_requests < min_requests) throw Error("invalid request-count range");
    if (deltas.empty()) throw Error("empty delta grid");
    for (const auto& d : deltas) {
      if (sgn(d) < 0 || d > 1) throw Error("delta must lie in [0, 1]");
    }
    if (strategies.empty()) throw Error("no strategies");
    for (const auto& s : strategies) {
      strategy_factory(s);
      if (s == "halfline" && !line.is_half_line()) throw Error("halfline strategy needs a half-line");
    }
  }
};

struct SweepRow {
  long trial;
  std::string strategy;
  Scalar delta;
  std::size_t requests;
  std::optional<Selection> selection;
  QuadraticScalar max_request_ratio;
  QuadraticScalar max_tour_ratio;
  std::optional<Certificate> certificate;
  bool passed;  // vacuous without a certificate
  std::optional<std::size_t> unserved;  // a request the strategy never reaches
};

namespace detail {

inline SweepRow sweep_cell(const SweepSpec& spec, long trial, std::size_t delta_index, const std::string& name) {
  const Scalar& delta = spec.deltas[delta_index];
  GenerateParams p;
  p.line = spec.line;
  p.min_requests = spec.min_requests;
  p.max_requests = spec.max_requests;
  p.max_arrival = spec.max_arrival;
  p.grid = spec.grid;
  p.delta = delta * spec.line.length();
  Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(trial), delta_index));
  Instance inst = generate_perturbed(p, rng);

  StrategyOptions opts{spec.alpha, p.delta};
  auto strategy = make_strategy(name, opts);
  SweepRow row{trial, name, delta, inst.size(), std::nullopt, QuadraticScalar(0), QuadraticScalar(0),
               certified_bound(name, spec.alpha, delta), true, std::nullopt};
  try {
    RunResult res = run(inst, *strategy);
    row.max_request_ratio = res.report.max_request_ratio;
    row.max_tour_ratio = res.report.max_tour_ratio;
    if (row.certificate) row.passed = certified_ratio(res.report, row.certificate->metric) <= row.certificate->bound;
  } catch (const UncoveredRequest& e) {
    row.unserved = e.id();
    row.passed = !row.certificate;
  }
  if (auto* sel = dynamic_cast<ThresholdSelectingStrategy*>(strategy.get())) row.selection = sel->selection();
  return row;
}

}  // namespace detail

/// One row per (trial, delta, strategy) in that order, computed on a worker pool.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  struct Cell {
    long trial;
    std::size_t delta_index;
    std::size_t strategy_index;
  };
  std::vector<Cell> cells;
  for (long t = 0; t < spec.trials; ++t) {
    for (std::size_t d = 0; d < spec.deltas.size(); ++d) {
      for (std::size_t s = 0; s < spec.strategies.size(); ++s) cells.push_back({t, d, s});
    }
  }
  std::vector<std::optional<SweepRow>> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        rows[i] = detail::sweep_cell(spec, cells[i].trial, cells[i].delta_index, spec.strategies[cells[i].strategy_index]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, cells.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<SweepRow> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

inline bool sweep_passed(const std::vector<SweepRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.passed; });
}

inline std::string to_string(RatioMetric m) { return m == RatioMetric::MetricFree ? "metric-free" : "tour"; }

/// Rows followed by one worst-case row per strategy, in the order the strategies were given.
inline void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  write_csv_row(os, {"trial", "strategy", "delta", "delta_decimal", "n", "selector", "max_request_ratio",
                     "max_request_ratio_decimal", "max_tour_ratio", "max_tour_ratio_decimal", "bound", "bound_decimal",
                     "metric", "pass"});
  for (const auto& r : rows) {
    std::string bound, bound_dec, metric, pass;
    if (r.certificate) {
      bound = r.certificate->bound.str();
      bound_dec = to_decimal(r.certificate->bound);
      metric = to_string(r.certificate->metric);
      pass = r.passed ? "pass" : "fail";
    }
    std::vector<std::string> ratios{r.max_request_ratio.str(), to_decimal(r.max_request_ratio), r.max_tour_ratio.str(),
                                    to_decimal(r.max_tour_ratio)};
    if (r.unserved) ratios.assign(4, "unserved");
    write_csv_row(os, {std::to_string(r.trial), r.strategy, to_string(r.delta), to_decimal(r.delta),
                       std::to_string(r.requests), r.selection ? to_string(*r.selection) : "", ratios[0], ratios[1],
                       ratios[2], ratios[3], bound, bound_dec, metric, pass});
  }
  for (const auto& name : spec.strategies) {
    QuadraticScalar worst(0), worst_tour(0);
    bool any_certified = false, all_passed = true, any_unserved = false;
    std::size_t n = 0;
    for (const auto& r : rows) {
      if (r.strategy != name) continue;
      any_unserved = any_unserved || r.unserved.has_value();
      worst = max_of(worst, r.max_request_ratio);
      worst_tour = max_of(worst_tour, r.max_tour_ratio);
      any_certified = any_certified || r.certificate.has_value();
      all_passed = all_passed && r.passed;
      n = std::max(n, r.requests);
    }
    std::vector<std::string> ratios{worst.str(), to_decimal(worst), worst_tour.str(), to_decimal(worst_tour)};
    if (any_unserved) ratios.assign(4, "unserved");
    write_csv_row(os, {"worst", name, "", "", std::to_string(n), "", ratios[0], ratios[1], ratios[2], ratios[3], "", "",
                       "", any_certified ? (all_passed ? "pass" : "fail") : ""});
  }
}

}  // namespace trp
