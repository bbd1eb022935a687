#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "maxpm/oracle.hpp"
#include "maxpm/quantify.hpp"
#include "maxpm/rng.hpp"

namespace maxpm::influence {

// Directed edge with a base activation probability p0 and a boosted
// probability p1 (applied when the head node is in the boosted set);
// 0 <= p0 <= p1 <= 1.
struct BoostedEdge {
  int src = 0;
  int dst = 0;
  double p0 = 0.0;
  double p1 = 0.0;
};

// Directed graph with per-edge (p0, p1) weights and a nonempty spread seed
// set. Node ids are dense 0..num_nodes-1 and double as element ids.
struct BoostedGraph {
  int num_nodes = 0;
  std::vector<BoostedEdge> edges;
  std::vector<int> seeds;
  bool weights_assigned = false;
  std::size_t dropped_self_loops = 0;

  std::vector<int> in_degree() const;
  std::vector<int> out_degree() const;
  void validate() const;  // id ranges, weight ordering, nonempty seeds
};

// Whitespace-separated integer pair per line; '#' lines are comments.
// Self-loops are dropped (counted in dropped_self_loops). Node ids are
// remapped densely in first-appearance order; with treat_undirected each
// input edge is emitted in both directions. Weights stay unset.
BoostedGraph load_snap_edgelist(const std::string& path, bool treat_undirected);

// In-degree weighting: every edge (u, v) gets p0 = 1/d_v and
// p1 = min(2/d_v, 1), d_v the in-degree of v.
BoostedGraph assign_degree_weights(BoostedGraph g);

// Node maximizing in-degree + out-degree, ties to lowest id.
int highest_degree_node(const BoostedGraph& g);

// JSON instance: {"nodes": n, "seeds": [...],
//                 "edges": [{"src":u,"dst":v,"p0":x,"p1":y}, ...]}
BoostedGraph load_influence_json(const std::string& path);

// Per-edge uniform draws in [0, 1) for a set of pre-sampled realizations.
// Draws are pure functions of (seed, sample index, edge index), so the set
// costs O(1) memory; an explicit table constructor exists for fixtures.
class RealizationSet {
 public:
  RealizationSet(std::uint64_t seed, int num_samples, std::size_t num_edges);
  explicit RealizationSet(std::vector<std::vector<double>> explicit_draws);

  int num_samples() const { return num_samples_; }
  std::size_t num_edges() const { return num_edges_; }
  double draw(int sample, std::size_t edge) const;

 private:
  std::uint64_t seed_ = 0;
  int num_samples_ = 0;
  std::size_t num_edges_ = 0;
  std::vector<std::vector<double>> table_;  // empty => counter-based
};

// Coupled live-edge state of one edge in one realization: the same uniform
// draw is thresholded against p0 or p1 depending on whether the head node is
// boosted, so boosting a node can only turn edges live.
enum class EdgeState : std::uint8_t { always_live, boost_live, dead };

inline EdgeState classify_edge(double u, double p0, double p1) {
  if (u <= p0) return EdgeState::always_live;
  if (u <= p1) return EdgeState::boost_live;
  return EdgeState::dead;
}

// f(S) = mean over realizations of the number of nodes reachable from the
// seed set via live edges, where an edge is live iff its draw <= p1 when the
// head is boosted and <= p0 otherwise. Wrap with normalize() before running
// algorithms on it. Keeps references to g and r.
std::unique_ptr<ObjectiveOracle> monte_carlo_oracle(const BoostedGraph& g,
                                                    const RealizationSet& r);

// Per-realization reach counts for one boosted set (test/diagnostic surface;
// the Monte Carlo oracle's value is the mean of these).
std::vector<int> per_realization_reach(const BoostedGraph& g,
                                       const RealizationSet& r,
                                       std::span<const ElementId> boosted);

// Exact expected reach by enumerating all 3^|E| edge-state assignments
// (always-live w.p. p0, boost-live w.p. p1 - p0, dead w.p. 1 - p1).
// Guarded by |E| <= max_edges.
std::unique_ptr<ObjectiveOracle> exact_oracle(const BoostedGraph& g,
                                              int max_edges = 12);

// Bounds on (gamma, alpha) from the per-edge probability ratios: with
// cap = min(total_budget * max_in_degree, |E|),
//   gamma' = product of the cap smallest factors (1 - p1) / (1 - p0),
//   alpha' = 1 - 1 / (product of the cap largest factors p1 / p0).
// Edges with p1 = 1 zero their gamma factor; edges with p0 = 0 and p1 > 0
// degrade both bounds (gamma' = 0, alpha' = 1), since the ratio argument
// divides by realization probabilities that vanish there.
NonSubmodParams edge_ratio_bounds(const BoostedGraph& g, int total_budget);

// Random even-sized partition of 0..n-1 into k groups (a uniformly shuffled
// deal; remainder elements go to the lowest-indexed groups).
std::vector<std::vector<ElementId>> random_balanced_groups(int n, int k,
                                                           Rng& rng);

// b_i = floor(b/k) with the remainder spread over the lowest-indexed groups.
std::vector<int> equal_budget_split(int total_budget, int k);

}  // namespace maxpm::influence
