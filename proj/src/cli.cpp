#include "maxpm/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "maxpm/algorithms.hpp"
#include "maxpm/influence.hpp"
#include "maxpm/quantify.hpp"
#include "maxpm/summarization.hpp"

namespace maxpm::cli {

namespace {

// Stream tags for child-seed derivation (see README, "Reproducibility").
constexpr std::uint64_t kRealizationStream = 1;
constexpr std::uint64_t kGroupStream = 2;
constexpr std::uint64_t kAlgorithmStream = 3;

std::string file_extension_lower(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  for (char& c : ext) c = static_cast<char>(std::tolower(c));
  return ext;
}

std::string format_number(double v) {
  std::ostringstream out;
  out << std::setprecision(15) << v;
  return out.str();
}

}  // namespace

App parse_app(const std::string& name) {
  if (name == "synthetic") return App::synthetic;
  if (name == "influence") return App::influence;
  if (name == "summarization") return App::summarization;
  fail(ErrorCode::config_error, "unknown app '" + name + "'");
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "greedy") return Algorithm::greedy;
  if (name == "thr") return Algorithm::thr;
  if (name == "prob") return Algorithm::prob;
  if (name == "fastprob") return Algorithm::fastprob;
  if (name == "resgreedy") return Algorithm::resgreedy;
  if (name == "brute") return Algorithm::brute;
  fail(ErrorCode::config_error, "unknown algorithm '" + name + "'");
}

const char* app_name(App app) {
  switch (app) {
    case App::synthetic: return "synthetic";
    case App::influence: return "influence";
    case App::summarization: return "summarization";
  }
  return "?";
}

const char* algorithm_name(Algorithm alg) {
  switch (alg) {
    case Algorithm::greedy: return "greedy";
    case Algorithm::thr: return "thr";
    case Algorithm::prob: return "prob";
    case Algorithm::fastprob: return "fastprob";
    case Algorithm::resgreedy: return "resgreedy";
    case Algorithm::brute: return "brute";
  }
  return "?";
}

ExperimentConfig load_config(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) fail(ErrorCode::io_error, "cannot open " + json_path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::config_error, json_path + ": " + e.what());
  }

  ExperimentConfig cfg;
  try {
    if (doc.contains("app")) cfg.app = parse_app(doc["app"].get<std::string>());
    if (doc.contains("alg")) {
      cfg.algorithms.clear();
      if (doc["alg"].is_array())
        for (const auto& a : doc["alg"])
          cfg.algorithms.push_back(parse_algorithm(a.get<std::string>()));
      else
        cfg.algorithms.push_back(parse_algorithm(doc["alg"].get<std::string>()));
    }
    if (doc.contains("b")) cfg.b = doc["b"].get<int>();
    if (doc.contains("k")) cfg.k = doc["k"].get<int>();
    if (doc.contains("eps")) cfg.epsilon = doc["eps"].get<double>();
    if (doc.contains("delta")) cfg.delta = doc["delta"].get<double>();
    auto optional_param = [&](const char* key) -> std::optional<double> {
      if (!doc.contains(key) || (doc[key].is_string() &&
                                 doc[key].get<std::string>() == "auto"))
        return std::nullopt;
      return doc[key].get<double>();
    };
    cfg.gamma_lb = optional_param("gamma_prime");
    cfg.alpha_ub = optional_param("alpha_prime");
    if (doc.contains("reps")) cfg.repetitions = doc["reps"].get<int>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("realizations"))
      cfg.realizations = doc["realizations"].get<int>();
    if (doc.contains("input")) cfg.input_path = doc["input"].get<std::string>();
    if (doc.contains("features"))
      cfg.features_path = doc["features"].get<std::string>();
    if (doc.contains("output"))
      cfg.output_path = doc["output"].get<std::string>();
    if (doc.contains("exact")) cfg.exact = doc["exact"].get<bool>();
    if (doc.contains("log_objective"))
      cfg.log_objective = doc["log_objective"].get<bool>();
    if (doc.contains("vary")) cfg.vary = doc["vary"].get<std::string>();
    if (doc.contains("values")) {
      cfg.values.clear();
      for (const auto& v : doc["values"]) cfg.values.push_back(v.get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::config_error, json_path + ": " + e.what());
  }
  return cfg;
}

namespace {

// Everything built once per experiment: the application data, the raw and
// normalized objectives, and optional fixed groups from a synthetic file.
struct Instance {
  App app = App::synthetic;
  int ground_size = 0;

  influence::BoostedGraph graph;
  std::unique_ptr<influence::RealizationSet> realizations;
  std::optional<summarization::GramMatrix> gram;

  std::unique_ptr<ObjectiveOracle> base;
  std::unique_ptr<NormalizedOracle> objective;

  std::optional<std::vector<std::vector<ElementId>>> fixed_groups;
  std::optional<std::vector<int>> fixed_budgets;
};

Instance build_instance(const ExperimentConfig& cfg) {
  Instance inst;
  inst.app = cfg.app;
  switch (cfg.app) {
    case App::influence: {
      if (cfg.input_path.empty())
        fail(ErrorCode::config_error, "influence app requires --input");
      if (file_extension_lower(cfg.input_path) == "json") {
        inst.graph = influence::load_influence_json(cfg.input_path);
      } else {
        inst.graph = influence::assign_degree_weights(
            influence::load_snap_edgelist(cfg.input_path, true));
        inst.graph.seeds = {influence::highest_degree_node(inst.graph)};
      }
      if (inst.graph.dropped_self_loops > 0)
        std::cerr << "warning: dropped " << inst.graph.dropped_self_loops
                  << " self-loop(s) from " << cfg.input_path << "\n";
      inst.graph.validate();
      inst.ground_size = inst.graph.num_nodes;
      // Realizations are pre-sampled once per experiment so every algorithm,
      // repetition and swept value sees the same estimator.
      inst.realizations = std::make_unique<influence::RealizationSet>(
          Rng::derive_seed(cfg.seed, kRealizationStream, 0), cfg.realizations,
          inst.graph.edges.size());
      inst.base = influence::monte_carlo_oracle(inst.graph, *inst.realizations);
      break;
    }
    case App::summarization: {
      if (cfg.features_path.empty())
        fail(ErrorCode::config_error, "summarization app requires --features");
      const auto features = summarization::load_features_csv(cfg.features_path);
      inst.gram = summarization::gaussian_gram(features);
      inst.ground_size = inst.gram->n();
      inst.base = cfg.log_objective
                      ? summarization::logdet_objective(*inst.gram)
                      : summarization::det_objective(*inst.gram);
      break;
    }
    case App::synthetic: {
      if (cfg.input_path.empty())
        fail(ErrorCode::config_error, "synthetic app requires --input");
      std::ifstream in(cfg.input_path);
      if (!in) fail(ErrorCode::io_error, "cannot open " + cfg.input_path);
      nlohmann::json doc;
      try {
        in >> doc;
        const std::string kind = doc.at("oracle").get<std::string>();
        if (kind == "modular") {
          auto weights = doc.at("weights").get<std::vector<double>>();
          inst.ground_size = static_cast<int>(weights.size());
          inst.base = make_modular(std::move(weights));
        } else if (kind == "coverage") {
          auto covers = doc.at("covers").get<std::vector<std::vector<int>>>();
          inst.ground_size = static_cast<int>(covers.size());
          inst.base = make_coverage(std::move(covers));
        } else if (kind == "cardinality_squared") {
          inst.ground_size = doc.at("n").get<int>();
          inst.base = make_cardinality_squared();
        } else {
          fail(ErrorCode::config_error, "unknown oracle kind '" + kind + "'");
        }
        if (doc.contains("groups")) {
          inst.fixed_groups =
              doc["groups"].get<std::vector<std::vector<ElementId>>>();
          if (!doc.contains("budgets"))
            fail(ErrorCode::config_error, "groups given without budgets");
          inst.fixed_budgets = doc["budgets"].get<std::vector<int>>();
        }
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::config_error, cfg.input_path + ": " + e.what());
      }
      break;
    }
  }
  inst.objective = normalize(*inst.base);
  return inst;
}

// The constraint for one repetition. Influence and synthetic instances get a
// fresh random balanced grouping per repetition (drawn from the repetition's
// stream); summarization uses the deterministic segment layout; fixed groups
// from a synthetic file are used as-is unless regroup_randomly is set (sweeps
// re-derive groups so that the swept b/k take effect).
PartitionMatroid matroid_for(const Instance& inst, int b, int k,
                             std::uint64_t rep_seed, bool regroup_randomly) {
  if (inst.app == App::summarization) {
    if (k < 1 || b < k)
      fail(ErrorCode::config_error, "need b >= k >= 1");
    return summarization::segment_partition(inst.ground_size, k, b / k);
  }
  if (inst.fixed_groups && !regroup_randomly) {
    return PartitionMatroid(*inst.fixed_groups, *inst.fixed_budgets);
  }
  Rng rng = Rng(rep_seed).split(kGroupStream);
  auto groups = influence::random_balanced_groups(inst.ground_size, k, rng);
  auto budgets = influence::equal_budget_split(b, k);
  // Balanced groups have sizes within one of each other; an equal split can
  // still exceed the smallest group when k does not divide n and b is large.
  for (std::size_t i = 0; i < groups.size(); ++i)
    if (budgets[i] > static_cast<int>(groups[i].size()))
      fail(ErrorCode::budget_out_of_range,
           "budget exceeds group size; lower b or k");
  return PartitionMatroid(std::move(groups), std::move(budgets));
}

// gamma'/alpha' for the randomized algorithms: explicit flags win, otherwise
// the application bound for the current total budget.
NonSubmodParams resolve_params(const Instance& inst,
                               const ExperimentConfig& cfg, int b) {
  if (cfg.gamma_lb && cfg.alpha_ub) {
    NonSubmodParams p;
    p.gamma = *cfg.gamma_lb;
    p.alpha = *cfg.alpha_ub;
    p.provenance = ParamProvenance::bound;
    return p;
  }
  if (cfg.gamma_lb || cfg.alpha_ub)
    fail(ErrorCode::config_error,
         "gamma'/alpha' must be both explicit or both auto");
  switch (inst.app) {
    case App::influence:
      return influence::edge_ratio_bounds(inst.graph, b);
    case App::summarization:
      return summarization::spectral_gamma_bound(*inst.gram, b);
    case App::synthetic:
      fail(ErrorCode::config_error,
           "synthetic app has no automatic gamma'/alpha'; pass --gamma-prime "
           "and --alpha-prime");
  }
  return {};
}

RunResult execute(Algorithm alg, const PartitionMatroid& m,
                  const ObjectiveOracle& f, const ExperimentConfig& cfg,
                  const NonSubmodParams* params, Rng rng) {
  switch (alg) {
    case Algorithm::greedy: return greedy(m, f);
    case Algorithm::thr: return threshold_greedy(m, f, cfg.epsilon);
    case Algorithm::prob:
      return prob(m, f, params->gamma, params->alpha, rng);
    case Algorithm::fastprob:
      return fast_prob(m, f, params->gamma, params->alpha, cfg.delta, rng);
    case Algorithm::resgreedy: return residual_greedy(m, f, rng);
    case Algorithm::brute: return brute_force(m, f);
  }
  fail(ErrorCode::config_error, "unreachable algorithm");
}

bool needs_params(Algorithm alg) {
  return alg == Algorithm::prob || alg == Algorithm::fastprob;
}

void print_params(std::ostream& out, const NonSubmodParams& p) {
  out << "gamma' = " << p.gamma << "  alpha' = " << p.alpha << "  ("
      << (p.provenance == ParamProvenance::exact_enumeration ? "exact"
                                                             : "bound");
  if (p.degenerate_spectrum) out << ", degenerate spectrum";
  out << ")\n";
}

}  // namespace

int cmd_run(const ExperimentConfig& cfg) {
  if (cfg.repetitions < 1)
    fail(ErrorCode::config_error, "repetitions must be >= 1");
  Instance inst = build_instance(cfg);

  std::ofstream csv;
  if (!cfg.output_path.empty()) {
    const bool fresh = !std::filesystem::exists(cfg.output_path) ||
                       std::filesystem::file_size(cfg.output_path) == 0;
    csv.open(cfg.output_path, std::ios::app);
    if (!csv)
      fail(ErrorCode::io_error, "cannot open " + cfg.output_path);
    if (fresh) csv << "app,alg,b,k,seed,objective,raw_objective,queries\n";
  }

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const std::uint64_t rep_seed = Rng::derive_seed(cfg.seed, 0, rep);
    const PartitionMatroid m =
        matroid_for(inst, cfg.b, cfg.k, rep_seed, /*regroup_randomly=*/false);
    std::optional<NonSubmodParams> params;
    for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
      const Algorithm alg = cfg.algorithms[ai];
      if (needs_params(alg) && !params)
        params = resolve_params(inst, cfg, m.total_budget());
      Rng rng = Rng(rep_seed).split(kAlgorithmStream).split(ai);
      const auto start = std::chrono::steady_clock::now();
      const RunResult result = execute(alg, m, *inst.objective, cfg,
                                       params ? &*params : nullptr, rng);
      const double ms =
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - start)
              .count();
      const double raw = result.objective + inst.objective->offset();

      std::cout << "rep " << rep << "  " << algorithm_name(alg)
                << "  b=" << m.total_budget() << " k=" << m.num_groups()
                << "  f=" << result.objective << "  raw=" << raw
                << "  queries=" << result.queries << "  time=" << ms << "ms\n";
      if (params && needs_params(alg)) print_params(std::cout, *params);
      if (csv.is_open())
        csv << app_name(cfg.app) << ',' << algorithm_name(alg) << ','
            << m.total_budget() << ',' << m.num_groups() << ',' << rep_seed
            << ',' << format_number(result.objective) << ','
            << format_number(raw) << ',' << result.queries << '\n';
    }
  }
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  if (cfg.values.empty())
    fail(ErrorCode::config_error, "sweep requires --values");
  if (cfg.vary != "b" && cfg.vary != "k")
    fail(ErrorCode::config_error, "--vary must be 'b' or 'k'");
  if (cfg.repetitions < 1)
    fail(ErrorCode::config_error, "repetitions must be >= 1");
  Instance inst = build_instance(cfg);

  const std::size_t n_algs = cfg.algorithms.size();
  std::vector<std::vector<double>> obj_mean(cfg.values.size(),
                                            std::vector<double>(n_algs, 0.0));
  std::vector<std::vector<double>> query_mean = obj_mean;

  for (std::size_t vi = 0; vi < cfg.values.size(); ++vi) {
    const int value = cfg.values[vi];
    const int b = cfg.vary == "b" ? value : cfg.b;
    const int k = cfg.vary == "k" ? value : cfg.k;
    std::optional<NonSubmodParams> params;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      const std::uint64_t rep_seed =
          Rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(value), rep);
      const PartitionMatroid m =
          matroid_for(inst, b, k, rep_seed, /*regroup_randomly=*/true);
      for (std::size_t ai = 0; ai < n_algs; ++ai) {
        const Algorithm alg = cfg.algorithms[ai];
        if (needs_params(alg) && !params)
          params = resolve_params(inst, cfg, m.total_budget());
        Rng rng = Rng(rep_seed).split(kAlgorithmStream).split(ai);
        const RunResult result = execute(alg, m, *inst.objective, cfg,
                                         params ? &*params : nullptr, rng);
        obj_mean[vi][ai] += result.objective / cfg.repetitions;
        query_mean[vi][ai] +=
            static_cast<double>(result.queries) / cfg.repetitions;
      }
    }
    std::cout << cfg.vary << "=" << value << " done\n";
  }

  const std::filesystem::path dir =
      cfg.output_path.empty() ? "." : cfg.output_path;
  std::filesystem::create_directories(dir);
  const std::string swept_col = cfg.vary == "b" ? "B" : "num_groups";
  auto write_table = [&](const std::string& name,
                         const std::vector<std::vector<double>>& table) {
    std::ofstream out(dir / name);
    if (!out) fail(ErrorCode::io_error, "cannot write " + (dir / name).string());
    out << swept_col;
    for (const Algorithm alg : cfg.algorithms) out << ',' << algorithm_name(alg);
    out << '\n';
    for (std::size_t vi = 0; vi < cfg.values.size(); ++vi) {
      out << cfg.values[vi];
      for (std::size_t ai = 0; ai < n_algs; ++ai)
        out << ',' << format_number(table[vi][ai]);
      out << '\n';
    }
  };
  write_table("solution.csv", obj_mean);
  write_table("query.csv", query_mean);
  std::cout << "wrote " << (dir / "solution.csv").string() << " and "
            << (dir / "query.csv").string() << "\n";
  return 0;
}

namespace {

// Exact enumeration wants the application's exact objective where one exists
// (the Monte Carlo estimate would be enumerated otherwise).
NonSubmodParams exact_params(const Instance& inst, const PartitionMatroid& m) {
  if (inst.app == App::influence) {
    const auto oracle = influence::exact_oracle(inst.graph);
    const auto normalized = normalize(*oracle);
    return exact_gamma_alpha(m, *normalized);
  }
  return exact_gamma_alpha(m, *inst.objective);
}

}  // namespace

int cmd_bounds(const ExperimentConfig& cfg) {
  Instance inst = build_instance(cfg);
  const std::uint64_t rep_seed = Rng::derive_seed(cfg.seed, 0, 0);
  const PartitionMatroid m =
      matroid_for(inst, cfg.b, cfg.k, rep_seed, /*regroup_randomly=*/false);

  NonSubmodParams params;
  if (cfg.exact) {
    params = exact_params(inst, m);
  } else if (cfg.gamma_lb || cfg.alpha_ub || inst.app != App::synthetic) {
    params = resolve_params(inst, cfg, m.total_budget());
  } else {
    fail(ErrorCode::config_error,
         "synthetic bounds need --exact or explicit gamma'/alpha'");
  }

  std::cout << "n=" << m.num_elements() << " k=" << m.num_groups()
            << " b=" << m.total_budget() << " b_min=" << m.min_budget()
            << " n_max=" << m.max_group_size() << "\n";
  print_params(std::cout, params);
  const RatioReport report =
      make_ratio_report(params.gamma, params.alpha, cfg.epsilon,
                        m.max_group_size(), m.total_budget(), m.min_budget());
  std::cout << "beta = " << report.beta
            << "\nprob ratio = " << report.prob_ratio << "\ngreedy: r1 = "
            << report.greedy.r1 << ", r2 = " << report.greedy.r2
            << ", ratio = " << report.greedy_ratio
            << "\nthrgreedy: r1 = " << report.thrgreedy.r1
            << ", r2 = " << report.thrgreedy.r2
            << ", ratio = " << report.thrgreedy_ratio << "\n";
  return 0;
}

int cmd_quantify(const ExperimentConfig& cfg) {
  Instance inst = build_instance(cfg);
  const std::uint64_t rep_seed = Rng::derive_seed(cfg.seed, 0, 0);
  const PartitionMatroid m =
      matroid_for(inst, cfg.b, cfg.k, rep_seed, /*regroup_randomly=*/false);
  const NonSubmodParams params = exact_params(inst, m);
  std::cout << "n=" << m.num_elements() << " k=" << m.num_groups()
            << " b=" << m.total_budget() << "\n";
  std::cout << "gamma = " << params.gamma << "\nalpha = " << params.alpha
            << "\n";
  return 0;
}

}  // namespace maxpm::cli
