#include "maxpm/oracle.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace maxpm {

double eval_uncounted(const ObjectiveOracle& o,
                      std::span<const ElementId> set) {
  if (const auto* counting = dynamic_cast<const CountingOracle*>(&o))
    return counting->value_uncounted(set);
  return o.value(set);
}

double marginal_gain(const ObjectiveOracle& o, ElementId e,
                     std::span<const ElementId> members, double cached_value) {
  std::vector<ElementId> with(members.begin(), members.end());
  if (std::find(with.begin(), with.end(), e) != with.end())
    fail(ErrorCode::element_already_in_set,
         "element " + std::to_string(e) + " already in set");
  with.push_back(e);
  return o.value(with) - cached_value;
}

namespace {

class ModularOracle final : public ObjectiveOracle {
 public:
  explicit ModularOracle(std::vector<double> weights)
      : weights_(std::move(weights)) {
    for (double w : weights_)
      if (w < 0.0) fail(ErrorCode::negative_weight, "modular weight < 0");
  }

  double value(std::span<const ElementId> set) const override {
    double total = 0.0;
    for (ElementId e : set) total += weights_.at(static_cast<size_t>(e));
    return total;
  }

 private:
  std::vector<double> weights_;
};

class CoverageOracle final : public ObjectiveOracle {
 public:
  explicit CoverageOracle(std::vector<std::vector<int>> covers)
      : covers_(std::move(covers)) {}

  double value(std::span<const ElementId> set) const override {
    std::unordered_set<int> covered;
    for (ElementId e : set) {
      const auto& items = covers_.at(static_cast<size_t>(e));
      covered.insert(items.begin(), items.end());
    }
    return static_cast<double>(covered.size());
  }

 private:
  std::vector<std::vector<int>> covers_;
};

class CardinalitySquaredOracle final : public ObjectiveOracle {
 public:
  double value(std::span<const ElementId> set) const override {
    const double k = static_cast<double>(set.size());
    return k * k;
  }
};

}  // namespace

std::unique_ptr<ObjectiveOracle> make_modular(std::vector<double> weights) {
  return std::make_unique<ModularOracle>(std::move(weights));
}

std::unique_ptr<ObjectiveOracle> make_coverage(
    std::vector<std::vector<int>> covers) {
  return std::make_unique<CoverageOracle>(std::move(covers));
}

std::unique_ptr<ObjectiveOracle> make_cardinality_squared() {
  return std::make_unique<CardinalitySquaredOracle>();
}

}  // namespace maxpm
