#pragma once

#include <optional>
#include <span>
#include <vector>

#include "maxpm/matroid.hpp"
#include "maxpm/oracle.hpp"
#include "maxpm/rng.hpp"

namespace maxpm {

struct TraceStep {
  int step;          // 0-based insertion index
  ElementId element;
  int group;
  double gain;       // marginal gain at acceptance time
};

// Audited outcome of one algorithm run. `objective` is f(solution),
// recomputed once at the end outside the query counter; `queries` counts the
// value() evaluations the algorithm performed.
struct RunResult {
  std::vector<ElementId> solution;  // ascending ids
  double objective = 0.0;
  long long queries = 0;
  std::vector<TraceStep> trace;
  int rounds = 0;  // threshold sweeps (threshold_greedy only)
};

// Below this value of 1 - gamma_lb * (1 - alpha_ub) the power exponent is
// treated as infinite and selection degenerates to a deterministic argmax
// (the limiting distribution).
inline constexpr double kExponentDenomFloor = 1e-9;

// ceil((pool_size + 1) / (1 - gamma_lb * (1 - alpha_ub))) - 1, or nullopt in
// the degenerate argmax regime.
std::optional<long long> power_exponent(int pool_size, double gamma_lb,
                                        double alpha_ub);

// Samples index j with probability gains[j]^a / sum_u gains[u]^a. Gains must
// be nonnegative; if all are zero (or a == 0, via the 0^0 := 1 convention)
// the choice is uniform. Weights are handled in log domain with Gumbel-max
// selection so huge exponents cannot overflow.
std::size_t sample_power_index(std::span<const double> gains, long long a,
                               Rng& rng);

// Candidate pool size for one sampled step:
// min(ceil((group_size - selected) / (group_budget - selected) * ln(total_budget / delta)),
//     group_size - selected).
int sampled_pool_size(int group_size, int selected_in_group, int group_budget,
                      int total_budget, double delta);

// First `count` entries of a uniform random permutation of `pool`
// (partial Fisher-Yates; order of the result is the shuffle order).
std::vector<ElementId> sample_without_replacement(
    std::span<const ElementId> pool, int count, Rng& rng);

// Plain greedy: every remaining element is evaluated each step and the
// best-gain element whose group still has budget is added, ties to lowest id.
// Deterministic; at most n * b queries.
RunResult greedy(const PartitionMatroid& m, const ObjectiveOracle& f);

// Decreasing-threshold greedy. Scans groups and elements in ascending order
// against the live partial solution, accepting any element whose gain meets
// the current threshold; the threshold decays by (1 - epsilon) per sweep and
// the loop stops at epsilon * (1 - epsilon) * tau0 / b. Deterministic.
RunResult threshold_greedy(const PartitionMatroid& m, const ObjectiveOracle& f,
                           double epsilon);

// Randomized power-law selection over the full per-group candidate pool,
// visiting unfilled groups round-robin in ascending index order. At most
// sum_i group_size(i) * budget(i) queries.
RunResult prob(const PartitionMatroid& m, const ObjectiveOracle& f,
               double gamma_lb, double alpha_ub, Rng& rng);

// As prob(), but each step samples a reduced candidate pool without
// replacement (size from sampled_pool_size). Queries equal the summed pool
// sizes.
RunResult fast_prob(const PartitionMatroid& m, const ObjectiveOracle& f,
                    double gamma_lb, double alpha_ub, double delta, Rng& rng);

// Residual greedy baseline: each step evaluates all addable elements, forms
// the max-weight residual base (per unfilled group, the residual-budget many
// highest-gain elements, ties to lowest id) and adds one of its members
// uniformly at random.
RunResult residual_greedy(const PartitionMatroid& m, const ObjectiveOracle& f,
                          Rng& rng);

// Exhaustive search over all maximal sets; ties broken to the
// lexicographically smallest sorted solution. Guarded by the product of
// per-group combination counts.
RunResult brute_force(const PartitionMatroid& m, const ObjectiveOracle& f,
                      long long enumeration_cap = 1'000'000);

}  // namespace maxpm
