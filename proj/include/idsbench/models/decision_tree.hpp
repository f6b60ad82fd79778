#pragma once

#include <cstdint>
#include <span>

#include "idsbench/matrix.hpp"
#include "idsbench/tree_engine.hpp"

namespace idsbench {

/// Single CART-style tree: greedy top-down induction, binary midpoint
/// thresholds, gini (or gain-ratio) impurity, leaves keep class counts.
struct TreeModel {
  TreeConfig config;
  Tree tree;
};

inline TreeModel train_decision_tree(const DesignMatrix& data,
                                     const TreeConfig& config) {
  TreeModel model;
  model.config = config;
  model.config.features_per_split = 0;
  model.tree =
      grow_classification_tree(data, identity_rows(data.rows), model.config);
  return model;
}

inline double tree_score(const TreeModel& model, std::span<const double> x) {
  return model.tree.class_fraction(x);
}

}  // namespace idsbench
