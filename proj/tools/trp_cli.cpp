#include <trp/trp.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kUsage = 1, kCertification = 2, kInternal = 3 };

class InternalMismatch : public trp::Error {
 public:
  using trp::Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw trp::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to `path`, or stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw trp::Error("cannot write '" + path + "'");
  out << text;
}

std::string exact(const trp::Scalar& x) { return trp::to_string(x); }
std::string exact(const trp::QuadraticScalar& x) { return x.str(); }

trp::Model parse_model(const std::string& s) {
  if (s == "prediction") return trp::Model::Prediction;
  if (s == "original") return trp::Model::Original;
  throw trp::Error("unknown model '" + s + "'");
}

std::vector<trp::Scalar> parse_list(const std::vector<std::string>& items) {
  std::vector<trp::Scalar> out;
  for (const auto& s : items) out.push_back(trp::parse_scalar(s));
  return out;
}

struct Common {
  std::string alpha = "sqrt3/2";
  std::string out;
  std::uint64_t seed = 1;
};

int cmd_oracle(const std::string& file, bool brute) {
  trp::Instance inst = trp::parse_instance(read_file(file));
  auto points = inst.actual_locations();
  trp::LatencyTour best = trp::optimal_latency_tour(points);
  trp::ArcIndex arcs(best.tour);
  std::cout << "tour " << best.tour.str() << "\n";
  std::cout << "opt_sum " << exact(best.opt_sum) << " " << trp::to_decimal(best.opt_sum) << "\n";
  for (std::size_t k = 0; k < arcs.vertices().size(); ++k) {
    std::cout << "vertex " << exact(arcs.vertices()[k]) << " arc " << exact(arcs.vertex_arcs()[k]) << "\n";
  }
  auto bounds = trp::opt_request_lower_bound(inst, best.tour);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    std::cout << "request " << i << " tour_bound " << exact(bounds[i].tour_bound) << " metric_free "
              << exact(bounds[i].metric_free) << "\n";
  }
  if (brute) {
    trp::BruteForceResult oracle = trp::brute_force_latency(points);
    std::cout << "brute_sum " << exact(oracle.opt_sum) << "\n";
    if (oracle.opt_sum != best.opt_sum) throw InternalMismatch("tour DP disagrees with brute force");
    std::cout << "brute force agrees\n";
  }
  return kOk;
}

int cmd_simulate(const std::string& file, const std::string& name, const Common& c, const std::string& delta_text,
                 const std::string& model, bool certify) {
  trp::Instance inst = trp::parse_instance(read_file(file), parse_model(model));
  trp::QuadraticScalar alpha = trp::parse_quadratic(c.alpha);
  trp::Scalar delta = delta_text.empty() ? inst.relative_error() : trp::parse_scalar(delta_text);
  if (sgn(delta) < 0) throw trp::Error("negative delta");
  trp::StrategyOptions opts{alpha, delta * inst.line().length()};
  auto strategy = trp::make_strategy(name, opts);
  trp::RunResult res = trp::run(inst, *strategy);

  std::ostringstream os;
  trp::write_csv_row(os, {"id", "predicted", "actual", "t", "completion", "completion_decimal", "opt_lb", "ratio",
                          "ratio_decimal", "tour_lb", "tour_ratio", "tour_ratio_decimal"});
  for (const auto& o : res.report.requests) {
    const trp::Request& r = inst.requests()[o.id];
    trp::write_csv_row(os, {std::to_string(o.id), exact(r.predicted_loc), exact(r.actual_loc), exact(r.arrival_time),
                            exact(o.completion), trp::to_decimal(o.completion), exact(o.opt_lower_bound),
                            exact(o.ratio), trp::to_decimal(o.ratio), exact(o.tour_lower_bound), exact(o.tour_ratio),
                            trp::to_decimal(o.tour_ratio)});
  }
  const auto& rep = res.report;
  os << "# max_request_ratio " << exact(rep.max_request_ratio) << " " << trp::to_decimal(rep.max_request_ratio) << "\n";
  os << "# max_tour_ratio " << exact(rep.max_tour_ratio) << " " << trp::to_decimal(rep.max_tour_ratio) << "\n";
  os << "# sum_ratio " << exact(rep.sum_ratio) << " " << trp::to_decimal(rep.sum_ratio) << "\n";
  if (auto* sel = dynamic_cast<trp::ThresholdSelectingStrategy*>(strategy.get())) {
    os << "# selector " << trp::to_string(sel->selection()) << "\n";
  }

  // A certificate needs the assumed error to cover the instance's real error.
  std::optional<trp::Certificate> cert;
  if (inst.relative_error() <= delta) {
    cert = trp::certified_bound(name, alpha, name == "perfect" ? inst.relative_error() : delta);
  }
  bool ok = true;
  if (cert) {
    ok = trp::certified_ratio(rep, cert->metric) <= cert->bound;
    os << "# bound " << exact(cert->bound) << " " << trp::to_decimal(cert->bound) << " " << trp::to_string(cert->metric)
       << " " << (ok ? "pass" : "fail") << "\n";
  } else {
    os << "# bound none\n";
  }
  emit(c.out, os.str());
  return certify && !ok ? kCertification : kOk;
}

int cmd_generate(const std::string& kind, const Common& c, const trp::GenerateParams& base, const std::string& delta) {
  trp::GenerateParams p = base;
  p.delta = trp::parse_scalar(delta) * p.line.length();
  emit(c.out, trp::serialize_instance(trp::generate(kind, p, c.seed)));
  return kOk;
}

int cmd_adversary(const std::string& name, const Common& c, const std::string& log_path) {
  trp::StrategyOptions opts{trp::parse_quadratic(c.alpha), trp::Scalar(0)};
  trp::GameTranscript tr = trp::play_lowerbound_game(trp::strategy_factory(name, opts));
  std::ostringstream log, csv;
  trp::write_transcript_log(log, tr);
  trp::write_transcript_csv(csv, tr);
  emit(log_path, log.str());
  if (!c.out.empty()) emit(c.out, csv.str());
  if (!tr.witness) return kCertification;
  trp::QuadraticScalar ratio = trp::verify_witness(tr);
  std::cout << "verified ratio " << exact(ratio) << " " << trp::to_decimal(ratio) << "\n";
  return kOk;
}

int cmd_sweep(trp::SweepSpec spec, const Common& c, const std::vector<std::string>& deltas, bool certify) {
  spec.alpha = trp::parse_quadratic(c.alpha);
  spec.seed = c.seed;
  if (!deltas.empty()) spec.deltas = parse_list(deltas);
  auto rows = trp::run_sweep(spec);
  std::ostringstream os;
  trp::write_sweep_csv(os, spec, rows);
  emit(c.out, os.str());
  return certify && !trp::sweep_passed(rows) ? kCertification : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online traveling repairperson on a line: oracles, simulation, adversary games, sweeps"};
  app.require_subcommand(1);
  Common common;
  std::string left = "-10", right = "10";

  auto add_common = [&](CLI::App* sub, bool seed) {
    sub->add_option("--alpha", common.alpha, "Round-trip parameter, e.g. sqrt3/2 or 1/2")->capture_default_str();
    sub->add_option("--out", common.out, "Output file (default stdout)");
    if (seed) sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
  };
  auto add_line = [&](CLI::App* sub) {
    sub->add_option("--left", left, "Left end a <= 0")->capture_default_str();
    sub->add_option("--right", right, "Right end b >= 0")->capture_default_str();
  };

  std::string file;
  bool brute = false;
  auto* oracle = app.add_subcommand("oracle", "Optimal offline tour of an instance's actual locations");
  oracle->add_option("file", file, "Instance file")->required();
  oracle->add_flag("--brute", brute, "Cross-check against exhaustive search (n <= 9)");

  std::string strategy = "perfect", delta, model = "prediction";
  bool certify = false;
  auto* simulate = app.add_subcommand("simulate", "Run one strategy on an instance");
  simulate->add_option("file", file, "Instance file")->required();
  simulate->add_option("--strategy", strategy, "halfline, perfect, robust or greedy")->capture_default_str();
  simulate->add_option("--delta", delta, "Relative prediction error assumed by robust (default: measured)");
  simulate->add_option("--model", model, "prediction or original")->capture_default_str();
  simulate->add_flag("--certify", certify, "Exit 2 if a proven bound is exceeded");
  add_common(simulate, false);

  std::string kind = "random", gen_delta = "0";
  trp::GenerateParams gen;
  auto* generate = app.add_subcommand("generate", "Write a seeded instance");
  generate->add_option("--kind", kind, "random, perturbed or lowerbound")->capture_default_str();
  generate->add_option("--min-n", gen.min_requests, "Fewest requests")->capture_default_str();
  generate->add_option("--max-n", gen.max_requests, "Most requests")->capture_default_str();
  generate->add_option("--max-arrival", gen.max_arrival, "Latest integer arrival")->capture_default_str();
  generate->add_option("--grid", gen.grid, "Positions are multiples of 1/grid")->capture_default_str();
  generate->add_option("--delta", gen_delta, "Relative prediction error for perturbed")->capture_default_str();
  add_line(generate);
  add_common(generate, true);

  std::string log_path;
  auto* adversary = app.add_subcommand("adversary", "Play the lower-bound game against a strategy");
  adversary->add_option("--strategy", strategy, "halfline, perfect, robust or greedy")->capture_default_str();
  adversary->add_option("--log", log_path, "Text log file (default stdout)");
  add_common(adversary, false);

  trp::SweepSpec spec;
  std::vector<std::string> sweep_strategies, sweep_deltas;
  auto* sweep = app.add_subcommand("sweep", "Seeded batch of perturbed instances, one CSV row per trial, delta and strategy");
  sweep->add_option("--strategy", sweep_strategies, "Strategies (repeat or comma-separate)")->delimiter(',');
  sweep->add_option("--delta", sweep_deltas, "Relative errors (repeat or comma-separate)")->delimiter(',');
  sweep->add_option("--trials", spec.trials, "Trials")->capture_default_str();
  sweep->add_option("--min-n", spec.min_requests, "Fewest requests")->capture_default_str();
  sweep->add_option("--max-n", spec.max_requests, "Most requests")->capture_default_str();
  sweep->add_option("--max-arrival", spec.max_arrival, "Latest integer arrival")->capture_default_str();
  sweep->add_option("--grid", spec.grid, "Positions are multiples of 1/grid")->capture_default_str();
  sweep->add_option("--threads", spec.threads, "Worker threads (0: all cores)")->capture_default_str();
  sweep->add_flag("--certify", certify, "Exit 2 if any certified row fails");
  add_line(sweep);
  add_common(sweep, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*oracle) return cmd_oracle(file, brute);
    if (*simulate) return cmd_simulate(file, strategy, common, delta, model, certify);
    if (*generate) {
      gen.line = trp::LineSegment(trp::parse_scalar(left), trp::parse_scalar(right));
      return cmd_generate(kind, common, gen, gen_delta);
    }
    if (*adversary) return cmd_adversary(strategy, common, log_path);
    if (*sweep) {
      if (!sweep_strategies.empty()) spec.strategies = sweep_strategies;
      spec.line = trp::LineSegment(trp::parse_scalar(left), trp::parse_scalar(right));
      return cmd_sweep(spec, common, sweep_deltas, certify);
    }
  } catch (const InternalMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  } catch (const trp::WitnessMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  } catch (const trp::NondeterministicStrategy& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  } catch (const trp::UncoveredRequest& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  } catch (const trp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
