#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maxpm::cli {

enum class App { synthetic, influence, summarization };
enum class Algorithm { greedy, thr, prob, fastprob, resgreedy, brute };

App parse_app(const std::string& name);
Algorithm parse_algorithm(const std::string& name);
const char* app_name(App app);
const char* algorithm_name(Algorithm alg);

// One experiment manifest: a JSON config file plus flag overrides (flags
// win). Randomized pieces derive every stream from `seed`, so a config is a
// complete reproduction recipe.
struct ExperimentConfig {
  App app = App::synthetic;
  std::vector<Algorithm> algorithms{Algorithm::greedy};
  int b = 10;
  int k = 2;
  double epsilon = 0.5;
  double delta = 0.001;
  std::optional<double> gamma_lb;  // unset = auto (app-specific bound)
  std::optional<double> alpha_ub;
  int repetitions = 10;
  std::uint64_t seed = 1;
  int realizations = 100;
  std::string input_path;
  std::string features_path;
  std::string output_path;  // run: CSV file to append; sweep: directory
  bool exact = false;          // bounds/quantify: enumerate exact gamma/alpha
  bool log_objective = false;  // summarization: log det objective instead
  std::string vary = "b";      // sweep: "b" or "k"
  std::vector<int> values;     // sweep: swept values
};

ExperimentConfig load_config(const std::string& json_path);

// Subcommand entry points; each returns a process exit code (0 on success)
// and throws maxpm::Error for invalid configs or instances.
int cmd_run(const ExperimentConfig& config);
int cmd_sweep(const ExperimentConfig& config);
int cmd_bounds(const ExperimentConfig& config);
int cmd_quantify(const ExperimentConfig& config);

}  // namespace maxpm::cli
