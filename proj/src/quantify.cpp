#include "maxpm/quantify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace maxpm {

namespace {

constexpr double kAlphaLimitTol = 1e-9;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

NonSubmodParams exact_gamma_alpha(const PartitionMatroid& m,
                                  const ObjectiveOracle& f,
                                  long long enumeration_cap) {
  const int n = m.num_elements();
  long long work = n;
  for (int i = 0; i < n; ++i) {
    work *= 3;
    if (work > enumeration_cap)
      fail(ErrorCode::instance_too_large,
           "3^n * n exceeds enumeration cap " + std::to_string(enumeration_cap));
  }

  // Memoize f over all subsets keyed by bitmask.
  std::vector<double> fval(static_cast<size_t>(1) << n);
  {
    std::vector<ElementId> members;
    for (std::uint32_t mask = 0; mask < fval.size(); ++mask) {
      members.clear();
      for (int e = 0; e < n; ++e)
        if (mask & (1u << e)) members.push_back(e);
      fval[mask] = f.value(members);
    }
  }

  double gamma_ratio_min = std::numeric_limits<double>::infinity();
  double alpha_ratio_min = std::numeric_limits<double>::infinity();

  // Each element is classified as: outside T, in T \ S, or in S. The per-group
  // count of the middle class is pruned against the budgets as the recursion
  // descends.
  std::vector<int> diff_counts(static_cast<size_t>(m.num_groups()), 0);
  std::uint32_t s_mask = 0;
  std::uint32_t t_mask = 0;

  auto visit_pair = [&]() {
    for (int e = 0; e < n; ++e) {
      if (t_mask & (1u << e)) continue;
      const std::uint32_t bit = 1u << e;
      const double gain_t = fval[t_mask | bit] - fval[t_mask];
      const double gain_s = fval[s_mask | bit] - fval[s_mask];
      if (gain_t > 0.0)
        gamma_ratio_min = std::min(gamma_ratio_min, gain_s / gain_t);
      if (gain_s > 0.0)
        alpha_ratio_min = std::min(alpha_ratio_min, gain_t / gain_s);
    }
  };

  std::function<void(int)> descend = [&](int e) {
    if (e == n) {
      visit_pair();
      return;
    }
    const std::uint32_t bit = 1u << e;
    const int g = m.group_of(e);
    // outside T
    descend(e + 1);
    // in T \ S, if the group budget still allows it
    if (diff_counts[static_cast<size_t>(g)] < m.budget(g)) {
      ++diff_counts[static_cast<size_t>(g)];
      t_mask |= bit;
      descend(e + 1);
      t_mask &= ~bit;
      --diff_counts[static_cast<size_t>(g)];
    }
    // in S (hence in T)
    s_mask |= bit;
    t_mask |= bit;
    descend(e + 1);
    s_mask &= ~bit;
    t_mask &= ~bit;
  };
  descend(0);

  NonSubmodParams params;
  params.provenance = ParamProvenance::exact_enumeration;
  params.gamma = std::isfinite(gamma_ratio_min) ? clamp01(gamma_ratio_min) : 1.0;
  params.alpha =
      std::isfinite(alpha_ratio_min) ? clamp01(1.0 - alpha_ratio_min) : 0.0;
  return params;
}

double prob_ratio(double gamma_lb, double alpha_ub, int max_group_size) {
  if (gamma_lb <= 0.0) return std::numeric_limits<double>::infinity();
  const double beta = (1.0 / gamma_lb + alpha_ub - 1.0) *
                      (1.0 - 1.0 / (max_group_size + 2.0));
  return beta + 1.0;
}

namespace {

// (1/alpha) * (1 - (1 - alpha * gamma * sigma / b)^b_hat), with the analytic
// alpha -> 0 limit gamma * sigma * b_hat / b.
double r2_term(double gamma, double alpha, double sigma, int total_budget,
               int min_budget) {
  const double b = static_cast<double>(total_budget);
  if (std::abs(alpha) < kAlphaLimitTol)
    return gamma * sigma * static_cast<double>(min_budget) / b;
  return (1.0 - std::pow(1.0 - alpha * gamma * sigma / b, min_budget)) / alpha;
}

}  // namespace

RatioPair greedy_ratios(double gamma, double alpha, int total_budget,
                        int min_budget) {
  if (gamma <= 0.0)
    fail(ErrorCode::gamma_zero, "greedy ratio undefined for gamma = 0");
  RatioPair pair;
  pair.r1 = gamma / (1.0 + gamma * alpha);
  pair.r2 = r2_term(gamma, alpha, 1.0, total_budget, min_budget);
  return pair;
}

RatioPair thrgreedy_ratios(double gamma, double alpha, double epsilon,
                           int total_budget, int min_budget) {
  if (gamma <= 0.0)
    fail(ErrorCode::gamma_zero, "threshold-greedy ratio undefined for gamma = 0");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    fail(ErrorCode::config_error, "epsilon must lie in (0, 1)");
  const double sigma = 1.0 - epsilon;
  RatioPair pair;
  pair.r1 = gamma * sigma * sigma / (1.0 + gamma * alpha * sigma);
  pair.r2 = r2_term(gamma, alpha, sigma, total_budget, min_budget);
  return pair;
}

RatioReport make_ratio_report(double gamma, double alpha, double epsilon,
                              int max_group_size, int total_budget,
                              int min_budget) {
  RatioReport report;
  report.prob_ratio = prob_ratio(gamma, alpha, max_group_size);
  report.beta = report.prob_ratio - 1.0;
  if (gamma <= 0.0) {
    report.greedy = {0.0, 0.0};
    report.thrgreedy = {0.0, 0.0};
    report.greedy_ratio = std::numeric_limits<double>::infinity();
    report.thrgreedy_ratio = std::numeric_limits<double>::infinity();
    return report;
  }
  report.greedy = greedy_ratios(gamma, alpha, total_budget, min_budget);
  report.thrgreedy =
      thrgreedy_ratios(gamma, alpha, epsilon, total_budget, min_budget);
  report.greedy_ratio = 1.0 / std::max(report.greedy.r1, report.greedy.r2);
  report.thrgreedy_ratio =
      1.0 / std::max(report.thrgreedy.r1, report.thrgreedy.r2);
  return report;
}

}  // namespace maxpm
