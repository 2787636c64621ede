// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero if any fails.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run only criterion N

#include "support.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace trp;
using trp::support::q;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

const QuadraticScalar kBound(q(2), q(1));  // 2 + sqrt3

std::vector<std::vector<Scalar>> oracle_corpus() {
  Rng rng(20240101);
  std::vector<std::vector<Scalar>> sets;
  for (int i = 0; i < 1000; ++i) {
    std::vector<Scalar> pts;
    auto n = rng.uniform(1, 8);
    for (std::int64_t k = 0; k < n; ++k) pts.push_back(rng.uniform_grid(q(-10), q(10), 100));
    sets.push_back(std::move(pts));
  }
  return sets;
}

Outcome oracle_equivalence() {
  auto start = Clock::now();
  auto sets = oracle_corpus();
  std::size_t mismatches = 0;
  for (const auto& pts : sets) {
    if (optimal_latency_tour(pts).opt_sum != brute_force_latency(pts).opt_sum) ++mismatches;
  }
  double t = seconds_since(start);
  bool pass = mismatches == 0 && t < 30;
  return {pass, std::to_string(sets.size()) + " point sets, " + std::to_string(mismatches) + " mismatches, " +
                    fmt_seconds(t) + " (limit 30 s)"};
}

Outcome tour_structure() {
  auto sets = oracle_corpus();
  std::size_t bad = 0;
  std::string first;
  for (const auto& pts : sets) {
    std::string why = support::tour_structure_violation(optimal_latency_tour(pts).tour, pts);
    if (!why.empty()) {
      if (bad++ == 0) first = why;
    }
  }
  return {bad == 0, std::to_string(sets.size()) + " tours, " + std::to_string(bad) + " violations" +
                        (first.empty() ? "" : " (first: " + first + ")")};
}

Outcome halfline_certification() {
  auto start = Clock::now();
  GenerateParams p;
  p.line = LineSegment(0, 10);
  Rng rng(31337);
  QuadraticScalar worst(0);
  std::size_t over = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    Instance inst = generate_random(p, rng);
    HalfLineStrategy s(default_alpha());
    RunResult res = run(inst, s);
    worst = max_of(worst, res.report.max_request_ratio);
    if (res.report.max_request_ratio > kBound) ++over;
  }
  double t = seconds_since(start);
  return {over == 0 && t < 120, std::to_string(trials) + " instances, worst " + worst.str() + " (" +
                                    to_decimal(worst) + "), bound 2+sqrt3, " + std::to_string(over) + " over, " +
                                    fmt_seconds(t) + " (limit 120 s)"};
}

/// Largest integer n with n <= x.
long floor_of(const QuadraticScalar& x) {
  long n = static_cast<long>(std::floor(x.to_double()));
  while (QuadraticScalar(n) > x) --n;
  while (QuadraticScalar(n + 1) <= x) ++n;
  return n;
}

Outcome tightness_probe() {
  const QuadraticScalar c = QuadraticScalar(2) + QuadraticScalar(2) * default_alpha();
  RoundTripSchedule sched(default_alpha());
  std::ostringstream detail;
  bool pass = true;
  for (std::size_t j = 3; j <= 5; ++j) {
    QuadraticScalar prev_ratio(0);
    for (long d = 2; d <= 4; ++d) {
      long scale = 1;
      for (long k = 0; k < d + 3; ++k) scale *= 10;
      // Rational location in (s_{j-1}, s_{j-1} + 10^-d], within 10^-(d+3) of the upper end.
      QuadraticScalar target = sched.reach(j - 1) + QuadraticScalar(make_scalar(1, scale / 1000));
      Scalar l = make_scalar(floor_of(target * QuadraticScalar(scale)), scale);
      Instance inst = support::at_zero(LineSegment(0, 100), {l});
      HalfLineStrategy s(default_alpha());
      RunResult res = run(inst, s);
      QuadraticScalar ratio = res.report.max_request_ratio;
      // Served on trip j's outbound leg, after j-1 returns to the origin at time c^(j-1).
      QuadraticScalar power(1);
      for (std::size_t k = 1; k < j; ++k) power = power * c;
      QuadraticScalar expected = (power + QuadraticScalar(l)) / QuadraticScalar(l);
      bool ok = QuadraticScalar(l) > sched.reach(j - 1) && ratio == expected && ratio <= kBound &&
                kBound - ratio < QuadraticScalar(make_scalar(1, 100)) && ratio > prev_ratio;
      pass = pass && ok;
      detail << " j=" << j << ",d=" << d << ":" << to_decimal(ratio) << (ok ? "" : "!");
      prev_ratio = ratio;
    }
  }
  return {pass, "ratios vs 2+sqrt3 = 3.732051 within 1/100, increasing in d;" + detail.str()};
}

Outcome perfect_certification() {
  auto start = Clock::now();
  GenerateParams p;
  Rng rng(4242);
  QuadraticScalar worst(0), worst_free(0);
  std::size_t over = 0;
  const int trials = 5000;
  for (int i = 0; i < trials; ++i) {
    Instance inst = generate_random(p, rng);
    PerfectPredictionStrategy s(default_alpha());
    RunResult res = run(inst, s);
    worst = max_of(worst, res.report.max_tour_ratio);
    worst_free = max_of(worst_free, res.report.max_request_ratio);
    if (res.report.max_tour_ratio > kBound) ++over;
  }
  double t = seconds_since(start);
  return {over == 0 && t < 120, std::to_string(trials) + " instances, worst tour-based ratio " + to_decimal(worst) +
                                    ", bound 2+sqrt3, " + std::to_string(over) + " over (metric-free worst " +
                                    to_decimal(worst_free) + ", diagnostic), " + fmt_seconds(t) + " (limit 120 s)"};
}

Outcome robust_certification() {
  auto start = Clock::now();
  std::ostringstream detail;
  bool pass = true;
  const int trials = 5000;
  Rng rng(777);
  for (long percent : {1L, 3L, 5L}) {
    Scalar delta = make_scalar(percent, 100);
    QuadraticScalar bound = kBound + QuadraticScalar(Scalar(4 * delta));
    QuadraticScalar worst_half(0), worst_full(0), worst_tour(0);
    std::size_t over_half = 0, over_full = 0;
    for (int i = 0; i < trials; ++i) {
      bool half = i % 2 == 0;
      GenerateParams p;
      p.line = half ? LineSegment(0, 10) : LineSegment(-10, 10);
      p.delta = delta * p.line.length();
      Instance inst = generate_perturbed(p, rng);
      RobustPredictionStrategy s(default_alpha(), p.delta);
      RunResult res = run(inst, s);
      const QuadraticScalar& r = res.report.max_request_ratio;
      worst_tour = max_of(worst_tour, res.report.max_tour_ratio);
      if (half) {
        worst_half = max_of(worst_half, r);
        over_half += r > bound;
      } else {
        worst_full = max_of(worst_full, r);
        over_full += r > bound;
      }
    }
    pass = pass && over_half == 0 && over_full == 0;
    detail << " delta=" << to_string(delta) << ": bound " << to_decimal(bound) << ", half-line worst "
           << to_decimal(worst_half) << " (" << over_half << "/" << trials / 2 << " over), full-line worst "
           << to_decimal(worst_full) << " (" << over_full << "/" << trials / 2 << " over), tour-based worst "
           << to_decimal(worst_tour) << ";";
  }
  double t = seconds_since(start);
  pass = pass && t < 180;
  return {pass, "metric-free per-request ratio vs 2+sqrt3+4delta," + detail.str() + " " + fmt_seconds(t) +
                    " (limit 180 s)"};
}

Outcome selector_threshold() {
  const QuadraticScalar tau = fallback_threshold();
  bool pass = tau == QuadraticScalar(q(1, 2), q(-1, 4)) && kBound + QuadraticScalar(4) * tau == QuadraticScalar(4);
  std::ostringstream detail;
  for (long len : {1L, 10L, 20L, 37L}) {
    LineSegment line(-(len / 2), len - len / 2);
    QuadraticScalar boundary = tau * QuadraticScalar(line.length());
    pass = pass && select_algorithm(boundary, line) == Selection::Fallback;
    // Rationals a hair either side of the irrational boundary.
    Scalar below = make_scalar(floor_of(boundary * QuadraticScalar(1000000000)), 1000000000);
    Scalar above = below + make_scalar(1, 1000000000);
    pass = pass && select_algorithm(below, line) == Selection::Robust;
    pass = pass && select_algorithm(above, line) == Selection::Fallback;
    pass = pass && select_algorithm(q(0), line) == Selection::Robust;
    pass = pass && select_algorithm(Scalar(line.length() / 10), line) == Selection::Fallback;
    pass = pass && select_algorithm(Scalar(line.length() * make_scalar(67, 1000)), line) == Selection::Fallback;
    pass = pass && select_algorithm(Scalar(line.length() * make_scalar(669, 10000)), line) == Selection::Robust;
  }
  detail << "threshold " << tau.str() << " = " << to_decimal(tau) << " (rounded 0.067); boundary is Fallback,"
         << " rationals 1e-9 either side split Robust/Fallback on four line lengths";
  return {pass, detail.str()};
}

Outcome adversary_soundness() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  StrategyOptions zero{default_alpha(), Scalar(0)};
  std::vector<std::pair<std::string, StrategyFactory>> contenders{
      {"halfline", strategy_factory("halfline", zero)},
      {"perfect", strategy_factory("perfect", zero)},
      {"robust(Delta=0)", strategy_factory("robust", zero)},
      {"greedy", strategy_factory("greedy", zero)}};
  for (const auto& [label, factory] : contenders) {
    try {
      GameTranscript t = play_lowerbound_game(factory);
      if (!t.witness) {
        pass = false;
        detail << " " << label << ": escaped, max ratio " << t.max_ratio.str() << " (" << to_decimal(t.max_ratio)
               << ");";
        continue;
      }
      QuadraticScalar r = verify_witness(t);
      detail << " " << label << ": witness " << request_label(t.requests[t.witness->request]) << " ratio "
             << to_decimal(r) << ";";
    } catch (const Error& e) {
      pass = false;
      detail << " " << label << ": error " << e.what() << ";";
    }
  }
  double t = seconds_since(start);
  pass = pass && t < 10;
  return {pass, "witness ratio > 3 with replay check," + detail.str() + " " + fmt_seconds(t) + " (limit 10 s)"};
}

Outcome single_traversal() {
  GenerateParams p;
  p.max_arrival = 0;
  Rng rng(9001);
  std::size_t bad = 0;
  const int trials = 500;
  for (int i = 0; i < trials; ++i) {
    Instance inst = generate_random(p, rng);
    LatencyTour best = optimal_latency_tour(inst.predicted_locations());
    Trajectory once = tour_trajectory(best.tour);
    QuadraticScalar sum(0);
    for (const auto& r : inst.requests()) {
      sum += *first_service_time(once, QuadraticScalar(r.actual_loc), QuadraticScalar(r.arrival_time));
    }
    if (sum != QuadraticScalar(best.opt_sum)) ++bad;
  }
  return {bad == 0, std::to_string(trials) + " instances, " + std::to_string(bad) + " sums differ from opt_sum"};
}

Outcome determinism() {
  bool pass = true;
  GenerateParams p;
  p.delta = q(1, 3);
  p.grid = 9;
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    Instance inst = generate_perturbed(p, rng);
    pass = pass && parse_instance(serialize_instance(inst)) == inst;
  }
  for (const std::string kind : {"random", "perturbed", "lowerbound"}) {
    pass = pass && serialize_instance(generate(kind, p, 17)) == serialize_instance(generate(kind, p, 17));
  }
  SweepSpec spec;
  spec.trials = 20;
  spec.max_requests = 10;
  spec.strategies = {"perfect", "robust", "greedy"};
  spec.deltas = {q(0), q(1, 50), q(1, 10)};
  std::ostringstream a, b;
  spec.threads = 1;
  write_sweep_csv(a, spec, run_sweep(spec));
  spec.threads = 8;
  write_sweep_csv(b, spec, run_sweep(spec));
  pass = pass && a.str() == b.str();
  return {pass, "500 serialize/parse round trips, generate x3 kinds, sweep with 1 vs 8 threads byte-identical"};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "tour structure", tour_structure},
      {3, "half-line certification", halfline_certification},
      {4, "tightness probe", tightness_probe},
      {5, "perfect-prediction certification", perfect_certification},
      {6, "robust certification", robust_certification},
      {7, "selector threshold", selector_threshold},
      {8, "adversary soundness", adversary_soundness},
      {9, "single traversal equals opt_sum", single_traversal},
      {10, "engine and format determinism", determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail
              << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
