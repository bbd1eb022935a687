#pragma once

#include <span>
#include <vector>

#include "maxpm/error.hpp"

namespace maxpm {

// Elements are dense integer ids 0..n-1. Application code maps external
// identifiers (graph node ids, frame indices) onto this range.
using ElementId = int;

// Disjoint groups V_1,...,V_k with budgets 1 <= b_i <= |V_i|. A set S is
// feasible iff |S ∩ V_i| <= b_i for every group, and maximal iff every budget
// is met with equality. Immutable after construction, so instances can be
// shared across concurrent runs.
class PartitionMatroid {
 public:
  PartitionMatroid(std::vector<std::vector<ElementId>> groups,
                   std::vector<int> budgets);

  int num_elements() const { return n_; }
  int num_groups() const { return static_cast<int>(groups_.size()); }

  // Group members, sorted ascending.
  const std::vector<ElementId>& group(int i) const { return groups_[i]; }
  int group_size(int i) const { return static_cast<int>(groups_[i].size()); }
  int budget(int i) const { return budgets_[i]; }
  int group_of(ElementId e) const;

  int total_budget() const { return total_budget_; }    // sum of budgets
  int min_budget() const { return min_budget_; }        // smallest b_i
  int max_group_size() const { return max_group_size_; }

  bool is_feasible(std::span<const ElementId> set) const;
  bool is_maximal(std::span<const ElementId> set) const;

 private:
  std::vector<std::vector<ElementId>> groups_;
  std::vector<int> budgets_;
  std::vector<int> group_of_;
  int n_ = 0;
  int total_budget_ = 0;
  int min_budget_ = 0;
  int max_group_size_ = 0;
};

// A run-local subset with per-group occupancy counters, so feasibility
// updates along an algorithm's inner loop are O(1). The matroid must outlive
// every Subset built on it.
class Subset {
 public:
  explicit Subset(const PartitionMatroid& m);

  const PartitionMatroid& matroid() const { return *m_; }
  bool contains(ElementId e) const { return pos_[static_cast<size_t>(e)] >= 0; }
  int size() const { return static_cast<int>(members_.size()); }
  int count_in_group(int i) const { return group_counts_[static_cast<size_t>(i)]; }

  // Members in unspecified order (insertion order disturbed by removals).
  std::span<const ElementId> members() const { return members_; }
  std::vector<ElementId> sorted_members() const;

  void add(ElementId e);     // throws element_already_in_set / unknown_element
  void remove(ElementId e);  // throws unknown_element if absent

 private:
  const PartitionMatroid* m_;
  std::vector<ElementId> members_;
  std::vector<int> pos_;  // index into members_, or -1
  std::vector<int> group_counts_;
};

bool is_feasible(const PartitionMatroid& m, const Subset& s);
// Requires a feasible input; throws infeasible_input otherwise.
bool is_maximal(const PartitionMatroid& m, const Subset& s);
// True iff e is absent from s and its group still has residual budget.
bool can_add(const PartitionMatroid& m, const Subset& s, ElementId e);

}  // namespace maxpm
