#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "idsbench/matrix.hpp"
#include "idsbench/parallel.hpp"
#include "idsbench/rng.hpp"
#include "idsbench/tree_engine.hpp"

namespace idsbench {

/// Bagged CART trees. Each tree draws its own bootstrap resample and a
/// fresh candidate-feature subset at every node; prediction averages the
/// per-tree leaf class fractions.
struct ForestModel {
  TreeConfig tree_config;         // features_per_split as resolved at fit
  bool bootstrap = true;
  std::vector<Tree> trees;
  std::vector<std::uint64_t> tree_seeds;  // per-tree stream record
};

inline ForestModel train_random_forest(const DesignMatrix& data,
                                       std::size_t tree_count, bool bootstrap,
                                       std::size_t features_per_split,
                                       const TreeConfig& tree_config,
                                       std::uint64_t seed) {
  ForestModel model;
  model.tree_config = tree_config;
  if (features_per_split == 0)
    features_per_split = static_cast<std::size_t>(
        std::floor(std::sqrt(static_cast<double>(data.cols))));
  model.tree_config.features_per_split = features_per_split;
  model.bootstrap = bootstrap;
  model.trees.resize(tree_count);
  model.tree_seeds.resize(tree_count);
  for (std::size_t t = 0; t < tree_count; ++t)
    model.tree_seeds[t] = derive_seed(seed, "tree", t);

  parallel_for(tree_count, [&](std::size_t t) {
    Rng rng(model.tree_seeds[t]);
    std::vector<std::size_t> rows;
    if (bootstrap) {
      rows.resize(data.rows);
      for (auto& r : rows)
        r = static_cast<std::size_t>(rng.below(data.rows));
    } else {
      rows = identity_rows(data.rows);
    }
    model.trees[t] =
        grow_classification_tree(data, std::move(rows), model.tree_config,
                                 &rng);
  });
  return model;
}

inline double forest_score(const ForestModel& model,
                           std::span<const double> x) {
  double sum = 0.0;
  for (const auto& tree : model.trees) sum += tree.class_fraction(x);
  return sum / static_cast<double>(model.trees.size());
}

}  // namespace idsbench
