// Command-line front end: run / sweep / bounds / quantify over the synthetic,
// influence and summarization applications.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maxpm/cli.hpp"
#include "maxpm/error.hpp"

namespace {

using maxpm::cli::ExperimentConfig;

// Flags overlay the config file; unset flags leave the file values alone.
struct Flags {
  std::string config_path;
  std::string app;
  std::vector<std::string> algorithms;
  int b = -1;
  int k = -1;
  double eps = -1.0;
  double delta = -1.0;
  std::string gamma_lb;  // number or "auto"
  std::string alpha_ub;
  int reps = -1;
  std::int64_t seed = -1;
  int realizations = -1;
  std::string input;
  std::string features;
  std::string output;
  std::string vary;
  std::vector<int> values;
  bool exact = false;
  bool log_objective = false;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--app", flags.app, "synthetic | influence | summarization");
  cmd->add_option("--alg", flags.algorithms,
                  "greedy | thr | prob | fastprob | resgreedy | brute")
      ->delimiter(',');
  cmd->add_option("--b", flags.b, "total budget");
  cmd->add_option("--k", flags.k, "number of groups");
  cmd->add_option("--eps", flags.eps, "threshold-greedy epsilon");
  cmd->add_option("--delta", flags.delta, "fastprob failure probability");
  cmd->add_option("--gamma-prime", flags.gamma_lb,
                  "gamma lower bound, or 'auto'");
  cmd->add_option("--alpha-prime", flags.alpha_ub,
                  "alpha upper bound, or 'auto'");
  cmd->add_option("--reps", flags.reps, "repetitions");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--realizations", flags.realizations,
                  "pre-sampled realizations (influence)");
  cmd->add_option("--input", flags.input, "instance file (edge list or JSON)");
  cmd->add_option("--features", flags.features, "frame-features CSV");
  cmd->add_option("--output", flags.output, "CSV file (run) or directory (sweep)");
  cmd->add_option("--vary", flags.vary, "sweep variable: b | k");
  cmd->add_option("--values", flags.values, "swept values")->delimiter(',');
  cmd->add_flag("--exact", flags.exact, "enumerate exact gamma/alpha");
  cmd->add_flag("--log-objective", flags.log_objective,
                "summarization: log det objective (not the same objective)");
}

ExperimentConfig merge(const Flags& flags) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty())
    cfg = maxpm::cli::load_config(flags.config_path);
  if (!flags.app.empty()) cfg.app = maxpm::cli::parse_app(flags.app);
  if (!flags.algorithms.empty()) {
    cfg.algorithms.clear();
    for (const auto& name : flags.algorithms)
      cfg.algorithms.push_back(maxpm::cli::parse_algorithm(name));
  }
  if (flags.b >= 0) cfg.b = flags.b;
  if (flags.k >= 0) cfg.k = flags.k;
  if (flags.eps >= 0.0) cfg.epsilon = flags.eps;
  if (flags.delta >= 0.0) cfg.delta = flags.delta;
  auto parse_param = [](const std::string& text) -> std::optional<double> {
    if (text.empty() || text == "auto") return std::nullopt;
    return std::stod(text);
  };
  if (!flags.gamma_lb.empty()) cfg.gamma_lb = parse_param(flags.gamma_lb);
  if (!flags.alpha_ub.empty()) cfg.alpha_ub = parse_param(flags.alpha_ub);
  if (flags.reps >= 0) cfg.repetitions = flags.reps;
  if (flags.seed >= 0) cfg.seed = static_cast<std::uint64_t>(flags.seed);
  if (flags.realizations >= 0) cfg.realizations = flags.realizations;
  if (!flags.input.empty()) cfg.input_path = flags.input;
  if (!flags.features.empty()) cfg.features_path = flags.features;
  if (!flags.output.empty()) cfg.output_path = flags.output;
  if (!flags.vary.empty()) cfg.vary = flags.vary;
  if (!flags.values.empty()) cfg.values = flags.values;
  if (flags.exact) cfg.exact = true;
  if (flags.log_objective) cfg.log_objective = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monotone set-function maximization under partition matroids"};
  app.require_subcommand(1);

  Flags flags;
  CLI::App* run = app.add_subcommand("run", "run algorithms on one instance");
  CLI::App* sweep = app.add_subcommand("sweep", "sweep b or k, write CSV tables");
  CLI::App* bounds = app.add_subcommand("bounds", "print gamma'/alpha' and ratios");
  CLI::App* quantify =
      app.add_subcommand("quantify", "enumerate exact gamma/alpha");
  for (CLI::App* cmd : {run, sweep, bounds, quantify})
    add_common_flags(cmd, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg = merge(flags);
    if (run->parsed()) return maxpm::cli::cmd_run(cfg);
    if (sweep->parsed()) return maxpm::cli::cmd_sweep(cfg);
    if (bounds->parsed()) return maxpm::cli::cmd_bounds(cfg);
    if (quantify->parsed()) return maxpm::cli::cmd_quantify(cfg);
  } catch (const maxpm::Error& e) {
    std::cerr << "error: " << maxpm::error_code_name(e.code()) << ": "
              << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
