#include "maxpm/algorithms.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace maxpm {

namespace {

// Shared per-run bookkeeping: counted oracle, subset, cached f(S) and a
// scratch member list so a marginal gain costs one value() call and no
// allocation.
struct RunState {
  explicit RunState(const PartitionMatroid& m, const ObjectiveOracle& f)
      : matroid(m), counting(f), solution(m) {
    scratch.reserve(static_cast<size_t>(m.total_budget()) + 1);
  }

  double gain_of(ElementId e) {
    scratch.push_back(e);
    const double v = counting.value(scratch);
    scratch.pop_back();
    return v - cached_value;
  }

  void accept(ElementId e, double gain) {
    solution.add(e);
    scratch.push_back(e);
    cached_value += gain;
    trace.push_back({static_cast<int>(trace.size()), e,
                     matroid.group_of(e), gain});
  }

  RunResult finish(const ObjectiveOracle& f) {
    RunResult result;
    result.solution = solution.sorted_members();
    result.objective = eval_uncounted(f, result.solution);
    result.queries = counting.count();
    result.trace = std::move(trace);
    return result;
  }

  const PartitionMatroid& matroid;
  CountingOracle counting;
  Subset solution;
  std::vector<ElementId> scratch;
  std::vector<TraceStep> trace;
  double cached_value = 0.0;
};

bool any_unfilled(const PartitionMatroid& m, const Subset& s) {
  for (int i = 0; i < m.num_groups(); ++i)
    if (s.count_in_group(i) < m.budget(i)) return true;
  return false;
}

std::vector<ElementId> addable_in_group(const PartitionMatroid& m, int group,
                                        const Subset& s) {
  std::vector<ElementId> pool;
  pool.reserve(m.group(group).size());
  for (ElementId e : m.group(group))
    if (!s.contains(e)) pool.push_back(e);
  return pool;
}

std::size_t argmax_lowest_id(std::span<const double> gains) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < gains.size(); ++j)
    if (gains[j] > gains[best]) best = j;
  return best;
}

// One power-law selection step over `pool` for group `group`; returns the
// chosen pool index. Gains are clamped at zero before sampling (Monte Carlo
// objectives can produce tiny negative gains from cancellation).
std::size_t select_by_power(RunState& state, std::span<const ElementId> pool,
                            std::vector<double>& gains, double gamma_lb,
                            double alpha_ub, Rng& rng) {
  gains.clear();
  for (ElementId e : pool) gains.push_back(std::max(state.gain_of(e), 0.0));
  const auto a =
      power_exponent(static_cast<int>(pool.size()), gamma_lb, alpha_ub);
  if (!a) return argmax_lowest_id(gains);
  return sample_power_index(gains, *a, rng);
}

}  // namespace

std::optional<long long> power_exponent(int pool_size, double gamma_lb,
                                        double alpha_ub) {
  const double denom = 1.0 - gamma_lb * (1.0 - alpha_ub);
  if (denom < kExponentDenomFloor) return std::nullopt;
  const double a = std::ceil((pool_size + 1) / denom) - 1.0;
  return static_cast<long long>(a);
}

std::size_t sample_power_index(std::span<const double> gains, long long a,
                               Rng& rng) {
  if (gains.empty())
    fail(ErrorCode::empty_candidate_pool, "sample_power_index on empty pool");
  assert(a >= 0);
  bool all_zero = true;
  for (double g : gains) {
    assert(g >= 0.0);
    if (g > 0.0) all_zero = false;
  }
  // All-zero gains, or a == 0 with the 0^0 := 1 convention: uniform choice.
  if (all_zero || a == 0) return rng.next_below(gains.size());

  // Gumbel-max over log weights a * ln(g_j); zero gains have weight -inf and
  // are never chosen.
  std::size_t best = gains.size();
  double best_key = -std::numeric_limits<double>::infinity();
  const double exponent = static_cast<double>(a);
  for (std::size_t j = 0; j < gains.size(); ++j) {
    if (gains[j] <= 0.0) continue;
    const double key = exponent * std::log(gains[j]) + rng.next_gumbel();
    if (best == gains.size() || key > best_key) {
      best = j;
      best_key = key;
    }
  }
  return best;
}

int sampled_pool_size(int group_size, int selected_in_group, int group_budget,
                      int total_budget, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    fail(ErrorCode::invalid_delta, "delta must lie in (0, 1)");
  const int pool = group_size - selected_in_group;
  const int residual = group_budget - selected_in_group;
  assert(pool >= 1 && residual >= 1);
  const double raw = static_cast<double>(pool) / residual *
                     std::log(total_budget / delta);
  const double capped =
      std::min(std::ceil(raw), static_cast<double>(pool));
  return static_cast<int>(capped);
}

std::vector<ElementId> sample_without_replacement(
    std::span<const ElementId> pool, int count, Rng& rng) {
  assert(count >= 0 && static_cast<size_t>(count) <= pool.size());
  std::vector<ElementId> shuffled(pool.begin(), pool.end());
  for (int j = 0; j < count; ++j) {
    const std::size_t pick =
        static_cast<std::size_t>(j) +
        rng.next_below(shuffled.size() - static_cast<size_t>(j));
    std::swap(shuffled[static_cast<size_t>(j)], shuffled[pick]);
  }
  shuffled.resize(static_cast<size_t>(count));
  return shuffled;
}

RunResult greedy(const PartitionMatroid& m, const ObjectiveOracle& f) {
  RunState state(m, f);
  const int n = m.num_elements();
  while (any_unfilled(m, state.solution)) {
    bool found = false;
    ElementId best_e = -1;
    double best_gain = 0.0;
    // Evaluate every remaining element; only those whose group still has
    // budget compete in the argmax. Ties go to the lowest element id.
    for (ElementId e = 0; e < n; ++e) {
      if (state.solution.contains(e)) continue;
      const double gain = state.gain_of(e);
      if (!can_add(m, state.solution, e)) continue;
      if (!found || gain > best_gain) {
        found = true;
        best_e = e;
        best_gain = gain;
      }
    }
    assert(found);  // budgets <= group sizes guarantee an addable element
    state.accept(best_e, best_gain);
  }
  return state.finish(f);
}

RunResult threshold_greedy(const PartitionMatroid& m, const ObjectiveOracle& f,
                           double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    fail(ErrorCode::config_error, "epsilon must lie in (0, 1)");
  RunState state(m, f);
  const int n = m.num_elements();
  const int b = m.total_budget();

  // tau0 = max marginal gain over the empty set; costs n queries.
  double tau0 = -std::numeric_limits<double>::infinity();
  for (ElementId e = 0; e < n; ++e) tau0 = std::max(tau0, state.gain_of(e));

  const double tau_floor = epsilon * (1.0 - epsilon) * tau0 / b;
  double tau = tau0;
  int rounds = 0;
  while (any_unfilled(m, state.solution) && tau >= tau_floor) {
    ++rounds;
    for (int i = 0; i < m.num_groups(); ++i) {
      if (state.solution.count_in_group(i) >= m.budget(i)) continue;
      for (ElementId e : m.group(i)) {
        if (state.solution.contains(e)) continue;
        // Gains are taken against the live partial solution, so an insertion
        // earlier in this sweep affects later candidates.
        const double gain = state.gain_of(e);
        if (gain >= tau) {
          state.accept(e, gain);
          if (state.solution.count_in_group(i) >= m.budget(i)) break;
        }
      }
    }
    tau *= 1.0 - epsilon;
  }
  RunResult result = state.finish(f);
  result.rounds = rounds;
  return result;
}

RunResult prob(const PartitionMatroid& m, const ObjectiveOracle& f,
               double gamma_lb, double alpha_ub, Rng& rng) {
  if (gamma_lb < 0.0 || gamma_lb > 1.0 || alpha_ub < 0.0 || alpha_ub > 1.0)
    fail(ErrorCode::config_error, "gamma'/alpha' must lie in [0, 1]");
  RunState state(m, f);
  std::vector<double> gains;
  while (any_unfilled(m, state.solution)) {
    for (int i = 0; i < m.num_groups(); ++i) {
      if (state.solution.count_in_group(i) >= m.budget(i)) continue;
      const std::vector<ElementId> pool = addable_in_group(m, i, state.solution);
      const std::size_t pick =
          select_by_power(state, pool, gains, gamma_lb, alpha_ub, rng);
      state.accept(pool[pick], gains[pick]);
    }
  }
  return state.finish(f);
}

RunResult fast_prob(const PartitionMatroid& m, const ObjectiveOracle& f,
                    double gamma_lb, double alpha_ub, double delta, Rng& rng) {
  if (!(delta > 0.0 && delta < 1.0))
    fail(ErrorCode::invalid_delta, "delta must lie in (0, 1)");
  if (gamma_lb < 0.0 || gamma_lb > 1.0 || alpha_ub < 0.0 || alpha_ub > 1.0)
    fail(ErrorCode::config_error, "gamma'/alpha' must lie in [0, 1]");
  RunState state(m, f);
  std::vector<double> gains;
  const int b = m.total_budget();
  while (any_unfilled(m, state.solution)) {
    for (int i = 0; i < m.num_groups(); ++i) {
      const int selected = state.solution.count_in_group(i);
      if (selected >= m.budget(i)) continue;
      const std::vector<ElementId> pool = addable_in_group(m, i, state.solution);
      const int want =
          sampled_pool_size(m.group_size(i), selected, m.budget(i), b, delta);
      const std::vector<ElementId> sampled =
          sample_without_replacement(pool, want, rng);
      const std::size_t pick =
          select_by_power(state, sampled, gains, gamma_lb, alpha_ub, rng);
      state.accept(sampled[pick], gains[pick]);
    }
  }
  return state.finish(f);
}

RunResult residual_greedy(const PartitionMatroid& m, const ObjectiveOracle& f,
                          Rng& rng) {
  RunState state(m, f);
  struct Scored {
    double gain;
    ElementId element;
  };
  while (any_unfilled(m, state.solution)) {
    // Max-weight residual base: per unfilled group, its residual-budget many
    // highest-gain remaining elements (ties to lowest id).
    std::vector<ElementId> base;
    std::vector<double> base_gain_of(
        static_cast<size_t>(m.num_elements()), 0.0);
    for (int i = 0; i < m.num_groups(); ++i) {
      const int residual = m.budget(i) - state.solution.count_in_group(i);
      if (residual <= 0) continue;
      std::vector<Scored> scored;
      for (ElementId e : m.group(i)) {
        if (state.solution.contains(e)) continue;
        scored.push_back({state.gain_of(e), e});
      }
      std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.gain != b.gain) return a.gain > b.gain;
        return a.element < b.element;
      });
      for (int r = 0; r < residual; ++r) {
        base.push_back(scored[static_cast<size_t>(r)].element);
        base_gain_of[static_cast<size_t>(scored[static_cast<size_t>(r)].element)] =
            scored[static_cast<size_t>(r)].gain;
      }
    }
    std::sort(base.begin(), base.end());  // canonical order for determinism
    const ElementId chosen = base[rng.next_below(base.size())];
    state.accept(chosen, base_gain_of[static_cast<size_t>(chosen)]);
  }
  return state.finish(f);
}

namespace {

long long combination_count(int n, int k, long long cap) {
  // C(n, k), clamped at cap + 1 to avoid overflow.
  long long c = 1;
  k = std::min(k, n - k);
  for (int j = 1; j <= k; ++j) {
    c = c * (n - k + j) / j;
    if (c > cap) return cap + 1;
  }
  return c;
}

}  // namespace

RunResult brute_force(const PartitionMatroid& m, const ObjectiveOracle& f,
                      long long enumeration_cap) {
  long long total = 1;
  for (int i = 0; i < m.num_groups(); ++i) {
    total = total * combination_count(m.group_size(i), m.budget(i),
                                      enumeration_cap);
    if (total > enumeration_cap)
      fail(ErrorCode::instance_too_large,
           "maximal-set count exceeds enumeration cap " +
               std::to_string(enumeration_cap));
  }

  CountingOracle counting(f);
  std::vector<ElementId> current;
  current.reserve(static_cast<size_t>(m.total_budget()));
  std::vector<ElementId> best_set;
  double best_value = -std::numeric_limits<double>::infinity();

  // Nested per-group combination enumeration over all maximal sets.
  std::function<void(int)> visit_group = [&](int gi) {
    if (gi == m.num_groups()) {
      std::vector<ElementId> candidate(current);
      std::sort(candidate.begin(), candidate.end());
      const double v = counting.value(candidate);
      if (v > best_value || (v == best_value && candidate < best_set)) {
        best_value = v;
        best_set = std::move(candidate);
      }
      return;
    }
    const auto& group = m.group(gi);
    const int budget = m.budget(gi);
    std::function<void(std::size_t, int)> choose = [&](std::size_t start,
                                                       int taken) {
      if (taken == budget) {
        visit_group(gi + 1);
        return;
      }
      const std::size_t remaining_needed = static_cast<size_t>(budget - taken);
      for (std::size_t j = start; j + remaining_needed <= group.size(); ++j) {
        current.push_back(group[j]);
        choose(j + 1, taken + 1);
        current.pop_back();
      }
    };
    choose(0, 0);
  };
  visit_group(0);

  RunResult result;
  result.solution = std::move(best_set);
  result.objective = eval_uncounted(f, result.solution);
  result.queries = counting.count();
  return result;
}

}  // namespace maxpm
