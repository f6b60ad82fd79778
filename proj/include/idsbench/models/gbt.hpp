#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "idsbench/matrix.hpp"
#include "idsbench/tree_engine.hpp"

namespace idsbench {

/// Binary logistic gradient boosting: starts from the training log-odds,
/// then every round fits a depth-limited squared-error regression tree to
/// the residual y - p and adds it scaled by the learning rate.
struct GbtModel {
  double initial_log_odds = 0.0;
  double learning_rate = 0.1;
  std::vector<Tree> trees;
  std::vector<double> train_log_loss;  // after each round
};

namespace gbt_detail {

inline double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

inline double log_loss(const std::vector<double>& raw,
                       const std::vector<std::uint8_t>& labels) {
  constexpr double kEps = 1e-15;
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double p = sigmoid(raw[i]);
    if (p < kEps) p = kEps;
    if (p > 1.0 - kEps) p = 1.0 - kEps;
    sum -= labels[i] ? std::log(p) : std::log(1.0 - p);
  }
  return sum / static_cast<double>(raw.size());
}

}  // namespace gbt_detail

inline GbtModel train_gbt(const DesignMatrix& data, int rounds,
                          double learning_rate, int tree_depth) {
  GbtModel model;
  model.learning_rate = learning_rate;

  const std::size_t n = data.rows;
  const double positives = static_cast<double>(data.count_label(1));
  model.initial_log_odds =
      std::log(positives / (static_cast<double>(n) - positives));

  std::vector<double> raw(n, model.initial_log_odds);
  std::vector<double> residuals(n);
  TreeConfig cfg;
  cfg.max_depth = tree_depth;
  cfg.min_node_size = 2;

  model.trees.reserve(static_cast<std::size_t>(rounds));
  model.train_log_loss.reserve(static_cast<std::size_t>(rounds));
  for (int round = 0; round < rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i)
      residuals[i] = static_cast<double>(data.labels[i]) -
                     gbt_detail::sigmoid(raw[i]);
    Tree tree =
        grow_regression_tree(data, identity_rows(n), residuals, cfg);
    for (std::size_t i = 0; i < n; ++i)
      raw[i] += learning_rate * tree.regression_value(data.row(i));
    model.trees.push_back(std::move(tree));
    model.train_log_loss.push_back(gbt_detail::log_loss(raw, data.labels));
  }
  return model;
}

inline double gbt_score(const GbtModel& model, std::span<const double> x) {
  double raw = model.initial_log_odds;
  for (const auto& tree : model.trees)
    raw += model.learning_rate * tree.regression_value(x);
  return gbt_detail::sigmoid(raw);
}

}  // namespace idsbench
