#pragma once

#include <memory>
#include <span>
#include <vector>

#include "maxpm/matroid.hpp"

namespace maxpm {

// Black-box monotone set function f: 2^V -> R>=0. `set` lists distinct
// element ids in any order; implementations must be order-insensitive.
// Algorithms assume a normalized objective (f(empty) == 0); wrap application
// oracles with normalize() before handing them to an algorithm.
class ObjectiveOracle {
 public:
  virtual ~ObjectiveOracle() = default;
  virtual double value(std::span<const ElementId> set) const = 0;
};

// Counts value() evaluations. One evaluation == one query; a marginal gain
// against a cached f(S) therefore costs exactly one query. Counters are
// per-run state and must not be shared across concurrent runs.
class CountingOracle final : public ObjectiveOracle {
 public:
  explicit CountingOracle(const ObjectiveOracle& inner) : inner_(&inner) {}

  double value(std::span<const ElementId> set) const override {
    ++count_;
    return inner_->value(set);
  }
  // Bypasses the counter (used for end-of-run objective recomputation).
  double value_uncounted(std::span<const ElementId> set) const {
    return inner_->value(set);
  }
  long long count() const { return count_; }
  void reset() { count_ = 0; }

 private:
  const ObjectiveOracle* inner_;
  mutable long long count_ = 0;
};

// Subtracts f(empty), captured once at construction. Marginal gains are
// unchanged by the shift.
class NormalizedOracle final : public ObjectiveOracle {
 public:
  explicit NormalizedOracle(const ObjectiveOracle& inner)
      : inner_(&inner), offset_(inner.value({})) {}

  double value(std::span<const ElementId> set) const override {
    return inner_->value(set) - offset_;
  }
  double offset() const { return offset_; }

 private:
  const ObjectiveOracle* inner_;
  double offset_;
};

inline std::unique_ptr<NormalizedOracle> normalize(const ObjectiveOracle& o) {
  return std::make_unique<NormalizedOracle>(o);
}

// Evaluates without ticking the counter when `o` happens to be a
// CountingOracle; otherwise a plain evaluation.
double eval_uncounted(const ObjectiveOracle& o, std::span<const ElementId> set);

// f(S ∪ {e}) - cached_value, costing exactly one query.
// Requires e not already in `members`.
double marginal_gain(const ObjectiveOracle& o, ElementId e,
                     std::span<const ElementId> members, double cached_value);

// Built-in objectives for tests and synthetic experiments.
// modular: sum of nonnegative per-element weights (normalized, submodular).
// coverage: size of the union of per-element cover sets (submodular).
// cardinality squared: |S|^2 (supermodular).
std::unique_ptr<ObjectiveOracle> make_modular(std::vector<double> weights);
std::unique_ptr<ObjectiveOracle> make_coverage(
    std::vector<std::vector<int>> covers);
std::unique_ptr<ObjectiveOracle> make_cardinality_squared();

}  // namespace maxpm
