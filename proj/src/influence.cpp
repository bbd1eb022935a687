#include "maxpm/influence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace maxpm::influence {

std::vector<int> BoostedGraph::in_degree() const {
  std::vector<int> deg(static_cast<size_t>(num_nodes), 0);
  for (const auto& e : edges) ++deg[static_cast<size_t>(e.dst)];
  return deg;
}

std::vector<int> BoostedGraph::out_degree() const {
  std::vector<int> deg(static_cast<size_t>(num_nodes), 0);
  for (const auto& e : edges) ++deg[static_cast<size_t>(e.src)];
  return deg;
}

void BoostedGraph::validate() const {
  if (num_nodes <= 0) fail(ErrorCode::config_error, "graph has no nodes");
  if (seeds.empty()) fail(ErrorCode::config_error, "seed set is empty");
  for (int s : seeds)
    if (s < 0 || s >= num_nodes)
      fail(ErrorCode::unknown_element, "seed node out of range");
  for (const auto& e : edges) {
    if (e.src < 0 || e.src >= num_nodes || e.dst < 0 || e.dst >= num_nodes)
      fail(ErrorCode::unknown_element, "edge endpoint out of range");
    if (weights_assigned &&
        !(e.p0 >= 0.0 && e.p0 <= e.p1 && e.p1 <= 1.0))
      fail(ErrorCode::config_error, "edge weights must satisfy 0 <= p0 <= p1 <= 1");
  }
}

BoostedGraph load_snap_edgelist(const std::string& path,
                                bool treat_undirected) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open " + path);

  BoostedGraph g;
  std::unordered_map<long long, int> remap;
  auto node_of = [&](long long raw) {
    auto [it, inserted] = remap.emplace(raw, g.num_nodes);
    if (inserted) ++g.num_nodes;
    return it->second;
  };

  auto parse_integer = [](const std::string& token, long long& out) {
    std::istringstream s(token);
    s >> out;
    if (s.fail()) return false;
    std::string rest;
    return !(s >> rest);
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first, second, extra;
    if (!(tokens >> first)) continue;  // blank line
    if (first[0] == '#') continue;

    long long a = 0, b = 0;
    if (!(tokens >> second) || (tokens >> extra) || !parse_integer(first, a) ||
        !parse_integer(second, b))
      fail(ErrorCode::malformed_line,
           path + ":" + std::to_string(line_no) + ": expected two integers");

    const int u = node_of(a);
    const int v = node_of(b);
    if (u == v) {
      ++g.dropped_self_loops;
      continue;
    }
    g.edges.push_back({u, v, 0.0, 0.0});
    if (treat_undirected) g.edges.push_back({v, u, 0.0, 0.0});
  }
  return g;
}

BoostedGraph assign_degree_weights(BoostedGraph g) {
  const std::vector<int> indeg = g.in_degree();
  for (auto& e : g.edges) {
    const double d = static_cast<double>(indeg[static_cast<size_t>(e.dst)]);
    e.p0 = 1.0 / d;
    e.p1 = std::min(2.0 / d, 1.0);
  }
  g.weights_assigned = true;
  return g;
}

int highest_degree_node(const BoostedGraph& g) {
  if (g.num_nodes <= 0) fail(ErrorCode::config_error, "graph has no nodes");
  const std::vector<int> in = g.in_degree();
  const std::vector<int> out = g.out_degree();
  int best = 0;
  for (int v = 1; v < g.num_nodes; ++v)
    if (in[static_cast<size_t>(v)] + out[static_cast<size_t>(v)] >
        in[static_cast<size_t>(best)] + out[static_cast<size_t>(best)])
      best = v;
  return best;
}

BoostedGraph load_influence_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::config_error, path + ": " + e.what());
  }
  BoostedGraph g;
  try {
    g.num_nodes = doc.at("nodes").get<int>();
    for (const auto& s : doc.at("seeds")) g.seeds.push_back(s.get<int>());
    for (const auto& edge : doc.at("edges")) {
      BoostedEdge e;
      e.src = edge.at("src").get<int>();
      e.dst = edge.at("dst").get<int>();
      e.p0 = edge.at("p0").get<double>();
      e.p1 = edge.at("p1").get<double>();
      g.edges.push_back(e);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::config_error, path + ": " + e.what());
  }
  g.weights_assigned = true;
  g.validate();
  return g;
}

RealizationSet::RealizationSet(std::uint64_t seed, int num_samples,
                               std::size_t num_edges)
    : seed_(seed), num_samples_(num_samples), num_edges_(num_edges) {
  if (num_samples <= 0)
    fail(ErrorCode::config_error, "realization count must be positive");
}

RealizationSet::RealizationSet(std::vector<std::vector<double>> explicit_draws)
    : table_(std::move(explicit_draws)) {
  if (table_.empty())
    fail(ErrorCode::config_error, "realization table is empty");
  num_samples_ = static_cast<int>(table_.size());
  num_edges_ = table_.front().size();
  for (const auto& row : table_)
    if (row.size() != num_edges_)
      fail(ErrorCode::config_error, "ragged realization table");
}

double RealizationSet::draw(int sample, std::size_t edge) const {
  if (!table_.empty())
    return table_[static_cast<size_t>(sample)][edge];
  const std::uint64_t v = Rng::derive_seed(
      seed_, static_cast<std::uint64_t>(sample), static_cast<std::uint64_t>(edge));
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

namespace {

// Shared reach machinery: CSR adjacency plus per-(sample, edge) states
// precomputed once; BFS scratch reused across value() calls via epoch marks.
class InfluenceSim {
 public:
  InfluenceSim(const BoostedGraph& g, const RealizationSet& r)
      : graph_(&g), samples_(r.num_samples()) {
    g.validate();
    if (!g.weights_assigned)
      fail(ErrorCode::config_error, "edge weights not assigned");
    if (r.num_edges() != g.edges.size())
      fail(ErrorCode::config_error,
           "realization set sized for a different edge count");

    const std::size_t m = g.edges.size();
    states_.resize(static_cast<size_t>(samples_) * m);
    for (int s = 0; s < samples_; ++s)
      for (std::size_t e = 0; e < m; ++e)
        states_[static_cast<size_t>(s) * m + e] = static_cast<std::uint8_t>(
            classify_edge(r.draw(s, e), g.edges[e].p0, g.edges[e].p1));

    // CSR over outgoing edges.
    offsets_.assign(static_cast<size_t>(g.num_nodes) + 1, 0);
    for (const auto& e : g.edges) ++offsets_[static_cast<size_t>(e.src) + 1];
    for (std::size_t i = 1; i < offsets_.size(); ++i)
      offsets_[i] += offsets_[i - 1];
    dst_.resize(m);
    edge_index_.resize(m);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t e = 0; e < m; ++e) {
      const std::size_t slot = cursor[static_cast<size_t>(g.edges[e].src)]++;
      dst_[slot] = g.edges[e].dst;
      edge_index_[slot] = e;
    }

    visited_.assign(static_cast<size_t>(g.num_nodes), 0);
    boosted_.assign(static_cast<size_t>(g.num_nodes), 0);
    queue_.reserve(static_cast<size_t>(g.num_nodes));
  }

  void set_boosted(std::span<const ElementId> boosted) const {
    ++boost_epoch_;
    for (ElementId v : boosted) {
      if (v < 0 || v >= graph_->num_nodes)
        fail(ErrorCode::unknown_element, "boosted node out of range");
      boosted_[static_cast<size_t>(v)] = boost_epoch_;
    }
  }

  // Reach of the seed set in one realization, given the boosted marks set by
  // set_boosted(). Always counts the seeds themselves.
  int reach(int sample) const {
    const std::size_t m = graph_->edges.size();
    const std::uint8_t* state = states_.data() + static_cast<size_t>(sample) * m;
    ++visit_epoch_;
    queue_.clear();
    for (int s : graph_->seeds) {
      if (visited_[static_cast<size_t>(s)] == visit_epoch_) continue;
      visited_[static_cast<size_t>(s)] = visit_epoch_;
      queue_.push_back(s);
    }
    std::size_t head = 0;
    while (head < queue_.size()) {
      const int u = queue_[head++];
      for (std::size_t j = offsets_[static_cast<size_t>(u)];
           j < offsets_[static_cast<size_t>(u) + 1]; ++j) {
        const int v = dst_[j];
        if (visited_[static_cast<size_t>(v)] == visit_epoch_) continue;
        const auto st = static_cast<EdgeState>(state[edge_index_[j]]);
        const bool live =
            st == EdgeState::always_live ||
            (st == EdgeState::boost_live &&
             boosted_[static_cast<size_t>(v)] == boost_epoch_);
        if (!live) continue;
        visited_[static_cast<size_t>(v)] = visit_epoch_;
        queue_.push_back(v);
      }
    }
    return static_cast<int>(queue_.size());
  }

  int samples() const { return samples_; }

 private:
  const BoostedGraph* graph_;
  int samples_;
  std::vector<std::uint8_t> states_;
  std::vector<std::size_t> offsets_;
  std::vector<int> dst_;
  std::vector<std::size_t> edge_index_;
  mutable std::vector<int> visited_;
  mutable std::vector<int> boosted_;
  mutable std::vector<int> queue_;
  mutable int visit_epoch_ = 0;
  mutable int boost_epoch_ = 0;
};

class MonteCarloOracle final : public ObjectiveOracle {
 public:
  MonteCarloOracle(const BoostedGraph& g, const RealizationSet& r)
      : sim_(g, r) {}

  double value(std::span<const ElementId> set) const override {
    sim_.set_boosted(set);
    double total = 0.0;
    for (int s = 0; s < sim_.samples(); ++s) total += sim_.reach(s);
    return total / sim_.samples();
  }

 private:
  InfluenceSim sim_;
};

class ExactOracle final : public ObjectiveOracle {
 public:
  explicit ExactOracle(const BoostedGraph& g) : graph_(&g) {
    g.validate();
    if (!g.weights_assigned)
      fail(ErrorCode::config_error, "edge weights not assigned");
    out_edges_.resize(static_cast<size_t>(g.num_nodes));
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      out_edges_[static_cast<size_t>(g.edges[e].src)].push_back(e);
  }

  double value(std::span<const ElementId> set) const override {
    const auto& g = *graph_;
    const std::size_t m = g.edges.size();
    std::vector<char> boosted(static_cast<size_t>(g.num_nodes), 0);
    for (ElementId v : set) boosted[static_cast<size_t>(v)] = 1;

    // Enumerate all 3^m edge-state assignments; each edge is always-live
    // w.p. p0, boost-live w.p. p1 - p0, dead w.p. 1 - p1.
    std::vector<int> digit(m, 0);
    double expected = 0.0;
    for (;;) {
      double prob = 1.0;
      for (std::size_t e = 0; e < m; ++e) {
        const auto& edge = g.edges[e];
        prob *= digit[e] == 0   ? edge.p0
                : digit[e] == 1 ? edge.p1 - edge.p0
                                : 1.0 - edge.p1;
      }
      if (prob > 0.0) expected += prob * reach(boosted, digit);
      // Odometer increment over base-3 digits.
      std::size_t pos = 0;
      while (pos < m && digit[pos] == 2) digit[pos++] = 0;
      if (pos == m) break;
      ++digit[pos];
    }
    return expected;
  }

 private:
  int reach(const std::vector<char>& boosted,
            const std::vector<int>& digit) const {
    const auto& g = *graph_;
    std::vector<char> visited(static_cast<size_t>(g.num_nodes), 0);
    std::vector<int> queue;
    for (int s : g.seeds) {
      if (visited[static_cast<size_t>(s)]) continue;
      visited[static_cast<size_t>(s)] = 1;
      queue.push_back(s);
    }
    std::size_t head = 0;
    while (head < queue.size()) {
      const int u = queue[head++];
      for (std::size_t e : out_edges_[static_cast<size_t>(u)]) {
        const int v = g.edges[e].dst;
        if (visited[static_cast<size_t>(v)]) continue;
        const bool live = digit[e] == 0 ||
                          (digit[e] == 1 && boosted[static_cast<size_t>(v)]);
        if (!live) continue;
        visited[static_cast<size_t>(v)] = 1;
        queue.push_back(v);
      }
    }
    return static_cast<int>(queue.size());
  }

  const BoostedGraph* graph_;
  std::vector<std::vector<std::size_t>> out_edges_;
};

}  // namespace

std::unique_ptr<ObjectiveOracle> monte_carlo_oracle(const BoostedGraph& g,
                                                    const RealizationSet& r) {
  return std::make_unique<MonteCarloOracle>(g, r);
}

std::vector<int> per_realization_reach(const BoostedGraph& g,
                                       const RealizationSet& r,
                                       std::span<const ElementId> boosted) {
  InfluenceSim sim(g, r);
  sim.set_boosted(boosted);
  std::vector<int> out;
  out.reserve(static_cast<size_t>(sim.samples()));
  for (int s = 0; s < sim.samples(); ++s) out.push_back(sim.reach(s));
  return out;
}

std::unique_ptr<ObjectiveOracle> exact_oracle(const BoostedGraph& g,
                                              int max_edges) {
  if (static_cast<int>(g.edges.size()) > max_edges)
    fail(ErrorCode::instance_too_large,
         "exact oracle enumerates 3^|E| states; |E| <= " +
             std::to_string(max_edges) + " required");
  return std::make_unique<ExactOracle>(g);
}

NonSubmodParams edge_ratio_bounds(const BoostedGraph& g, int total_budget) {
  g.validate();
  if (!g.weights_assigned)
    fail(ErrorCode::config_error, "edge weights not assigned");

  NonSubmodParams params;
  params.provenance = ParamProvenance::bound;
  if (g.edges.empty()) return params;  // f constant: gamma = 1, alpha = 0

  int max_in_degree = 0;
  for (int d : g.in_degree()) max_in_degree = std::max(max_in_degree, d);
  const long long cap =
      std::min<long long>(static_cast<long long>(total_budget) * max_in_degree,
                          static_cast<long long>(g.edges.size()));

  bool zero_base_boost = false;  // some edge has p0 = 0 < p1
  std::vector<double> shrink_factors;  // (1 - p1) / (1 - p0), each <= 1
  std::vector<double> growth_factors;  // p1 / p0, each >= 1
  for (const auto& e : g.edges) {
    if (e.p0 == e.p1) {
      shrink_factors.push_back(1.0);
      growth_factors.push_back(1.0);
      continue;
    }
    if (e.p0 == 0.0) {
      zero_base_boost = true;
      continue;
    }
    shrink_factors.push_back(e.p1 >= 1.0 ? 0.0 : (1.0 - e.p1) / (1.0 - e.p0));
    growth_factors.push_back(e.p1 / e.p0);
  }

  if (zero_base_boost) {
    // The ratio argument divides by realization probabilities that vanish
    // when p0 = 0; both bounds degrade to their uninformative extremes.
    params.gamma = 0.0;
    params.alpha = 1.0;
    return params;
  }

  std::sort(shrink_factors.begin(), shrink_factors.end());
  double gamma = 1.0;
  for (long long j = 0; j < cap && j < static_cast<long long>(shrink_factors.size()); ++j)
    gamma *= shrink_factors[static_cast<size_t>(j)];

  std::sort(growth_factors.begin(), growth_factors.end(),
            std::greater<double>());
  double growth = 1.0;
  for (long long j = 0; j < cap && j < static_cast<long long>(growth_factors.size()); ++j)
    growth *= growth_factors[static_cast<size_t>(j)];

  params.gamma = std::clamp(gamma, 0.0, 1.0);
  params.alpha = std::isfinite(growth)
                     ? std::clamp(1.0 - 1.0 / growth, 0.0, 1.0)
                     : 1.0;
  return params;
}

std::vector<std::vector<ElementId>> random_balanced_groups(int n, int k,
                                                           Rng& rng) {
  if (k < 1 || k > n)
    fail(ErrorCode::config_error, "group count must lie in [1, n]");
  std::vector<ElementId> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  for (std::size_t j = 0; j + 1 < perm.size(); ++j) {
    const std::size_t pick = j + rng.next_below(perm.size() - j);
    std::swap(perm[j], perm[pick]);
  }
  std::vector<std::vector<ElementId>> groups(static_cast<size_t>(k));
  std::size_t pos = 0;
  for (int i = 0; i < k; ++i) {
    const int size = n / k + (i < n % k ? 1 : 0);
    groups[static_cast<size_t>(i)].assign(perm.begin() + static_cast<long>(pos),
                                          perm.begin() + static_cast<long>(pos + size));
    pos += static_cast<size_t>(size);
  }
  return groups;
}

std::vector<int> equal_budget_split(int total_budget, int k) {
  if (k < 1 || total_budget < k)
    fail(ErrorCode::config_error,
         "total budget must be at least the group count");
  std::vector<int> budgets(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i)
    budgets[static_cast<size_t>(i)] = total_budget / k + (i < total_budget % k ? 1 : 0);
  return budgets;
}

}  // namespace maxpm::influence
