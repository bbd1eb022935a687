#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "maxpm/cli.hpp"
#include "maxpm/error.hpp"
#include "test_support.hpp"

using namespace maxpm;
using namespace maxpm::cli;

namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
  const auto dir = fs::temp_directory_path() / "maxpm_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& contents) {
  const auto path = temp_dir() / name;
  std::ofstream out(path);
  out << contents;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path modular_instance() {
  return write_file("modular.json",
                    R"({"oracle": "modular", "weights": [3,1,2,5],
                        "groups": [[0,1],[2,3]], "budgets": [1,1]})");
}

fs::path coverage_instance_no_groups() {
  return write_file("coverage.json",
                    R"({"oracle": "coverage",
                        "covers": [[0,1],[1,2],[2,3],[3,4],[4,5],[5,6],
                                   [6,7],[7,8],[8,9],[9,10],[10,11],[0,11],
                                   [1,4],[2,5],[3,6],[0,7]]})");
}

}  // namespace

TEST_CASE("config files load with auto parameters and flag-style overrides") {
  const auto path = write_file("config.json",
                               R"({"app": "synthetic", "alg": ["greedy","thr"],
                                   "b": 4, "k": 2, "eps": 0.25,
                                   "gamma_prime": "auto",
                                   "alpha_prime": 0.5,
                                   "seed": 99, "reps": 3})");
  const ExperimentConfig cfg = load_config(path.string());
  CHECK(cfg.app == App::synthetic);
  REQUIRE(cfg.algorithms.size() == 2);
  CHECK(cfg.algorithms[1] == Algorithm::thr);
  CHECK(cfg.b == 4);
  CHECK(cfg.epsilon == 0.25);
  CHECK_FALSE(cfg.gamma_lb.has_value());
  CHECK(cfg.alpha_ub == 0.5);
  CHECK(cfg.seed == 99);
  CHECK(cfg.repetitions == 3);

  CHECK_THROWS_AS(load_config("/nonexistent.json"), Error);
  const auto bad = write_file("bad.json", "{not json");
  CHECK_THROWS_AS(load_config(bad.string()), Error);
  CHECK_THROWS_AS(parse_app("nope"), Error);
  CHECK_THROWS_AS(parse_algorithm("nope"), Error);
}

TEST_CASE("run appends deterministic CSV rows") {
  ExperimentConfig cfg;
  cfg.app = App::synthetic;
  cfg.input_path = modular_instance().string();
  cfg.algorithms = {Algorithm::fastprob};
  cfg.gamma_lb = 0.5;
  cfg.alpha_ub = 0.5;
  cfg.delta = 0.001;
  cfg.repetitions = 3;
  cfg.seed = 42;

  const auto csv_a = temp_dir() / "run_a.csv";
  const auto csv_b = temp_dir() / "run_b.csv";
  fs::remove(csv_a);
  fs::remove(csv_b);

  cfg.output_path = csv_a.string();
  CHECK(cmd_run(cfg) == 0);
  cfg.output_path = csv_b.string();
  CHECK(cmd_run(cfg) == 0);
  const std::string a = slurp(csv_a);
  CHECK(a == slurp(csv_b));
  CHECK(a.rfind("app,alg,b,k,seed,objective,raw_objective,queries\n", 0) == 0);
  // header + one row per repetition
  CHECK(std::count(a.begin(), a.end(), '\n') == 4);

  // Appending a second run keeps the single header.
  CHECK(cmd_run(cfg) == 0);
  const std::string doubled = slurp(csv_b);
  CHECK(std::count(doubled.begin(), doubled.end(), '\n') == 7);
}

TEST_CASE("greedy on a synthetic modular instance matches brute force") {
  ExperimentConfig cfg;
  cfg.app = App::synthetic;
  cfg.input_path = modular_instance().string();
  cfg.algorithms = {Algorithm::greedy, Algorithm::brute};
  cfg.repetitions = 1;
  const auto csv = temp_dir() / "greedy_vs_brute.csv";
  fs::remove(csv);
  cfg.output_path = csv.string();
  CHECK(cmd_run(cfg) == 0);
  // Both rows report the same objective (8).
  const std::string text = slurp(csv);
  CHECK(text.find("greedy,2,2") != std::string::npos);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<double> objectives;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    for (int c = 0; c <= 5; ++c) std::getline(cells, cell, ',');
    objectives.push_back(std::stod(cell));
  }
  REQUIRE(objectives.size() == 2);
  CHECK(objectives[0] == 8.0);
  CHECK(objectives[1] == 8.0);
}

TEST_CASE("sweep writes solution and query tables") {
  ExperimentConfig cfg;
  cfg.app = App::synthetic;
  cfg.input_path = coverage_instance_no_groups().string();
  cfg.algorithms = {Algorithm::greedy, Algorithm::fastprob,
                    Algorithm::brute};
  cfg.gamma_lb = 1.0;
  cfg.alpha_ub = 0.5;
  cfg.repetitions = 2;
  cfg.seed = 7;
  cfg.vary = "k";
  cfg.values = {2, 4, 8};
  cfg.b = 8;
  const auto dir = temp_dir() / "sweep_k";
  fs::remove_all(dir);
  cfg.output_path = dir.string();
  CHECK(cmd_sweep(cfg) == 0);

  const std::string solution = slurp(dir / "solution.csv");
  const std::string query = slurp(dir / "query.csv");
  CHECK(solution.rfind("num_groups,greedy,fastprob,brute\n", 0) == 0);
  CHECK(std::count(solution.begin(), solution.end(), '\n') == 4);

  // Parse both tables.
  auto parse = [](const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
      std::vector<double> row;
      std::istringstream cells(line);
      std::string cell;
      while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
      rows.push_back(row);
    }
    return rows;
  };
  const auto sol_rows = parse(solution);
  const auto query_rows = parse(query);

  for (std::size_t r = 0; r < sol_rows.size(); ++r) {
    // brute dominates every algorithm at every swept value
    CHECK(sol_rows[r][3] >= sol_rows[r][1] - 1e-9);
    CHECK(sol_rows[r][3] >= sol_rows[r][2] - 1e-9);
  }
  // fastprob mean query count is non-increasing in k
  CHECK(query_rows[0][2] >= query_rows[1][2]);
  CHECK(query_rows[1][2] >= query_rows[2][2]);

  // Sweeps are deterministic: a second run reproduces the files.
  const std::string solution_before = solution;
  CHECK(cmd_sweep(cfg) == 0);
  CHECK(slurp(dir / "solution.csv") == solution_before);
}

TEST_CASE("bounds and quantify subcommands") {
  ExperimentConfig cfg;
  cfg.app = App::synthetic;
  // |S|^2 toy: gamma 1/3, alpha 0.
  cfg.input_path = write_file("squared.json",
                              R"({"oracle": "cardinality_squared", "n": 2,
                                  "groups": [[0,1]], "budgets": [1]})")
                       .string();
  cfg.exact = true;
  CHECK(cmd_bounds(cfg) == 0);
  CHECK(cmd_quantify(cfg) == 0);

  cfg.exact = false;
  CHECK_THROWS_AS(cmd_bounds(cfg), Error);  // synthetic needs --exact or params
  cfg.gamma_lb = 0.5;
  cfg.alpha_ub = 0.0;
  CHECK(cmd_bounds(cfg) == 0);
}

TEST_CASE("config errors carry machine-readable categories") {
  ExperimentConfig cfg;
  cfg.app = App::influence;
  try {
    cmd_run(cfg);  // missing --input
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config_error);
    CHECK(std::string(error_code_name(e.code())) == "config_error");
  }

  ExperimentConfig sweep_cfg;
  sweep_cfg.app = App::synthetic;
  sweep_cfg.input_path = modular_instance().string();
  sweep_cfg.vary = "x";
  sweep_cfg.values = {1};
  CHECK_THROWS_AS(cmd_sweep(sweep_cfg), Error);

  // prob on synthetic without explicit gamma'/alpha' must fail
  ExperimentConfig prob_cfg;
  prob_cfg.app = App::synthetic;
  prob_cfg.input_path = modular_instance().string();
  prob_cfg.algorithms = {Algorithm::prob};
  prob_cfg.repetitions = 1;
  CHECK_THROWS_AS(cmd_run(prob_cfg), Error);
}

TEST_CASE("summarization app end to end with segment budgets") {
  // 8 frames, 2 features, fixed values.
  std::ostringstream csv;
  Rng rng(3);
  for (int i = 0; i < 8; ++i)
    csv << rng.next_double() << ',' << rng.next_double() << '\n';
  const auto feats = write_file("frames.csv", csv.str());

  ExperimentConfig cfg;
  cfg.app = App::summarization;
  cfg.features_path = feats.string();
  cfg.algorithms = {Algorithm::greedy, Algorithm::fastprob};
  cfg.gamma_lb.reset();
  cfg.alpha_ub.reset();  // auto: spectral bound
  cfg.b = 4;
  cfg.k = 2;
  cfg.repetitions = 1;
  const auto out = temp_dir() / "summ.csv";
  fs::remove(out);
  cfg.output_path = out.string();
  CHECK(cmd_run(cfg) == 0);
  CHECK(slurp(out).find("summarization,greedy,4,2") != std::string::npos);

  cfg.exact = false;
  CHECK(cmd_bounds(cfg) == 0);  // alpha' is always 0 here
}
