#pragma once

#include "maxpm/matroid.hpp"
#include "maxpm/oracle.hpp"

namespace maxpm {

enum class ParamProvenance { exact_enumeration, bound };

// Diminishing-return ratio gamma and curvature alpha of an objective under a
// partition matroid, either exact (by enumeration) or as computable bounds
// (gamma is then a lower bound, alpha an upper bound).
struct NonSubmodParams {
  double gamma = 1.0;  // in [0, 1]
  double alpha = 0.0;  // in [0, 1]
  ParamProvenance provenance = ParamProvenance::bound;
  // Set when a spectrum-based bound degenerated (objective constant up to the
  // identity part) and the trivial values were returned.
  bool degenerate_spectrum = false;
};

// Exact gamma and alpha by enumerating every pair S ⊆ T whose difference
// fits within the group budgets, together with every e outside T:
//   gamma = min over triples with gain(T) > 0 of gain(S) / gain(T)
//   alpha = 1 - min over triples with gain(S) > 0 of gain(T) / gain(S)
// defaulting to gamma = 1 / alpha = 0 when no triple constrains them.
// Objective values are memoized over all subsets first, so the cost is
// O(2^n) evaluations plus O(3^n * n) table lookups; guarded by
// 3^n * n <= enumeration_cap.
NonSubmodParams exact_gamma_alpha(const PartitionMatroid& m,
                                  const ObjectiveOracle& f,
                                  long long enumeration_cap = 1'000'000);

// Approximation factor of the power-law selection algorithm:
// beta + 1 with beta = (1/gamma' + alpha' - 1) * (1 - 1/(max_group_size + 2)).
// Returns +inf when gamma' == 0 (the bound is vacuous there).
double prob_ratio(double gamma_lb, double alpha_ub, int max_group_size);

struct RatioPair {
  double r1 = 0.0;
  double r2 = 0.0;
};

// Guarantee terms for greedy: the algorithm returns at least
// max(r1, r2) * optimum.
//   r1 = gamma / (1 + gamma * alpha)
//   r2 = (1/alpha) * (1 - (1 - alpha * gamma / b)^b_hat)
// with the analytic limit gamma * b_hat / b at alpha -> 0.
// Throws gamma_zero for gamma <= 0.
RatioPair greedy_ratios(double gamma, double alpha, int total_budget,
                        int min_budget);

// Same terms for threshold greedy with decay parameter epsilon:
//   r1 = gamma * (1-eps)^2 / (1 + gamma * alpha * (1-eps))
//   r2 = (1/alpha) * (1 - (1 - alpha * gamma * (1-eps) / b)^b_hat)
RatioPair thrgreedy_ratios(double gamma, double alpha, double epsilon,
                           int total_budget, int min_budget);

// All guarantee figures for one instance, as the CLI prints them.
// Ratios are >= 1 (approximation factors); +inf when gamma == 0.
struct RatioReport {
  double beta = 0.0;
  double prob_ratio = 1.0;
  RatioPair greedy;
  RatioPair thrgreedy;
  double greedy_ratio = 1.0;     // 1 / max(greedy.r1, greedy.r2)
  double thrgreedy_ratio = 1.0;  // 1 / max(thrgreedy.r1, thrgreedy.r2)
};

RatioReport make_ratio_report(double gamma, double alpha, double epsilon,
                              int max_group_size, int total_budget,
                              int min_budget);

}  // namespace maxpm
