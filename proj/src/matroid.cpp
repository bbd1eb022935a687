#include "maxpm/matroid.hpp"

#include <algorithm>
#include <string>

namespace maxpm {

PartitionMatroid::PartitionMatroid(std::vector<std::vector<ElementId>> groups,
                                   std::vector<int> budgets)
    : groups_(std::move(groups)), budgets_(std::move(budgets)) {
  if (groups_.empty()) fail(ErrorCode::empty_group, "matroid has no groups");
  if (budgets_.size() != groups_.size())
    fail(ErrorCode::config_error, "budgets and groups differ in length");

  std::size_t total = 0;
  for (const auto& g : groups_) {
    if (g.empty()) fail(ErrorCode::empty_group, "empty group");
    total += g.size();
  }
  n_ = static_cast<int>(total);

  group_of_.assign(total, -1);
  for (int i = 0; i < num_groups(); ++i) {
    for (ElementId e : groups_[i]) {
      if (e < 0 || e >= n_)
        fail(ErrorCode::unknown_element,
             "element id " + std::to_string(e) + " outside dense range [0, " +
                 std::to_string(n_) + ")");
      if (group_of_[static_cast<size_t>(e)] != -1)
        fail(ErrorCode::overlapping_groups,
             "element " + std::to_string(e) + " appears in more than one group");
      group_of_[static_cast<size_t>(e)] = i;
    }
    std::sort(groups_[i].begin(), groups_[i].end());
  }

  min_budget_ = budgets_[0];
  for (int i = 0; i < num_groups(); ++i) {
    const int ni = group_size(i);
    const int bi = budgets_[i];
    if (bi < 1 || bi > ni)
      fail(ErrorCode::budget_out_of_range,
           "budget " + std::to_string(bi) + " for group " + std::to_string(i) +
               " of size " + std::to_string(ni));
    total_budget_ += bi;
    min_budget_ = std::min(min_budget_, bi);
    max_group_size_ = std::max(max_group_size_, ni);
  }
}

int PartitionMatroid::group_of(ElementId e) const {
  if (e < 0 || e >= n_)
    fail(ErrorCode::unknown_element, "element id " + std::to_string(e));
  return group_of_[static_cast<size_t>(e)];
}

bool PartitionMatroid::is_feasible(std::span<const ElementId> set) const {
  std::vector<int> counts(static_cast<size_t>(num_groups()), 0);
  std::vector<char> seen(static_cast<size_t>(n_), 0);
  for (ElementId e : set) {
    const int g = group_of(e);
    if (seen[static_cast<size_t>(e)]) continue;  // set semantics
    seen[static_cast<size_t>(e)] = 1;
    if (++counts[static_cast<size_t>(g)] > budgets_[static_cast<size_t>(g)])
      return false;
  }
  return true;
}

bool PartitionMatroid::is_maximal(std::span<const ElementId> set) const {
  std::vector<int> counts(static_cast<size_t>(num_groups()), 0);
  std::vector<char> seen(static_cast<size_t>(n_), 0);
  for (ElementId e : set) {
    const int g = group_of(e);
    if (seen[static_cast<size_t>(e)]) continue;
    seen[static_cast<size_t>(e)] = 1;
    if (++counts[static_cast<size_t>(g)] > budgets_[static_cast<size_t>(g)])
      fail(ErrorCode::infeasible_input, "is_maximal requires a feasible set");
  }
  for (int i = 0; i < num_groups(); ++i)
    if (counts[static_cast<size_t>(i)] != budgets_[static_cast<size_t>(i)])
      return false;
  return true;
}

Subset::Subset(const PartitionMatroid& m)
    : m_(&m),
      pos_(static_cast<size_t>(m.num_elements()), -1),
      group_counts_(static_cast<size_t>(m.num_groups()), 0) {}

std::vector<ElementId> Subset::sorted_members() const {
  std::vector<ElementId> out(members_);
  std::sort(out.begin(), out.end());
  return out;
}

void Subset::add(ElementId e) {
  const int g = m_->group_of(e);
  if (contains(e))
    fail(ErrorCode::element_already_in_set,
         "element " + std::to_string(e) + " already in set");
  pos_[static_cast<size_t>(e)] = static_cast<int>(members_.size());
  members_.push_back(e);
  ++group_counts_[static_cast<size_t>(g)];
}

void Subset::remove(ElementId e) {
  const int g = m_->group_of(e);
  const int p = pos_[static_cast<size_t>(e)];
  if (p < 0)
    fail(ErrorCode::unknown_element,
         "element " + std::to_string(e) + " not in set");
  const ElementId last = members_.back();
  members_[static_cast<size_t>(p)] = last;
  pos_[static_cast<size_t>(last)] = p;
  members_.pop_back();
  pos_[static_cast<size_t>(e)] = -1;
  --group_counts_[static_cast<size_t>(g)];
}

bool is_feasible(const PartitionMatroid& m, const Subset& s) {
  for (int i = 0; i < m.num_groups(); ++i)
    if (s.count_in_group(i) > m.budget(i)) return false;
  return true;
}

bool is_maximal(const PartitionMatroid& m, const Subset& s) {
  if (!is_feasible(m, s))
    fail(ErrorCode::infeasible_input, "is_maximal requires a feasible set");
  for (int i = 0; i < m.num_groups(); ++i)
    if (s.count_in_group(i) != m.budget(i)) return false;
  return true;
}

bool can_add(const PartitionMatroid& m, const Subset& s, ElementId e) {
  if (s.contains(e)) return false;
  const int g = m.group_of(e);
  return s.count_in_group(g) < m.budget(g);
}

}  // namespace maxpm
