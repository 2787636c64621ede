// Runs every strategy that fits an instance file and prints the exact ratios.

#include <trp/trp.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: sample_run <instance-file>\n";
    return 1;
  }
  std::ifstream in(argv[1]);
  std::stringstream text;
  text << in.rdbuf();
  trp::Instance inst = trp::parse_instance(text.str());

  trp::StrategyOptions opts;
  opts.delta = inst.max_error();
  for (std::string name : {"halfline", "perfect", "robust", "greedy"}) {
    if (name == "halfline" && !inst.line().is_half_line()) continue;
    auto strategy = trp::make_strategy(name, opts);
    trp::RunResult res = trp::run(inst, *strategy);
    std::cout << name << ": max ratio " << res.report.max_request_ratio.str() << " ("
              << trp::to_decimal(res.report.max_request_ratio) << "), tour ratio "
              << trp::to_decimal(res.report.max_tour_ratio) << ", sum " << trp::to_decimal(res.report.on_sum) << "\n";
  }
}
