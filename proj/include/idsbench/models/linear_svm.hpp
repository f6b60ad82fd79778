#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "idsbench/matrix.hpp"
#include "idsbench/rng.hpp"
#include "idsbench/sampling.hpp"

namespace idsbench {

/// Linear soft-margin SVM fitted by stochastic subgradient descent on the
/// hinge loss (Pegasos step size 1/(lambda*t)). The bias is trained as a
/// regularized constant-one feature. Scores squash the signed margin
/// through a logistic, so score >= 0.5 exactly when the margin is
/// non-negative.
struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;
};

inline SvmModel train_svm(const DesignMatrix& data, double lambda, int epochs,
                          std::size_t subsample_cap, std::uint64_t seed) {
  auto rows =
      stratified_cap(data.labels, subsample_cap, derive_seed(seed, "cap"));
  const std::size_t m = rows.size();
  const std::size_t width = data.cols;

  std::vector<double> w(width + 1, 0.0);  // last entry is the bias feature
  Rng order_rng(derive_seed(seed, "epoch"));
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;

  std::uint64_t t = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    order_rng.shuffle(order);
    for (std::size_t i : order) {
      ++t;
      const std::size_t row_id = rows[i];
      auto x = data.row(row_id);
      const double y = data.labels[row_id] ? 1.0 : -1.0;
      double margin = w[width];
      for (std::size_t j = 0; j < width; ++j) margin += w[j] * x[j];
      margin *= y;

      const double shrink = 1.0 - 1.0 / static_cast<double>(t);
      for (auto& wj : w) wj *= shrink;
      if (margin < 1.0) {
        const double eta_y = y / (lambda * static_cast<double>(t));
        for (std::size_t j = 0; j < width; ++j) w[j] += eta_y * x[j];
        w[width] += eta_y;
      }
    }
  }

  SvmModel model;
  model.bias = w[width];
  w.pop_back();
  model.weights = std::move(w);
  return model;
}

inline double svm_margin(const SvmModel& model, std::span<const double> x) {
  double margin = model.bias;
  for (std::size_t j = 0; j < model.weights.size(); ++j)
    margin += model.weights[j] * x[j];
  return margin;
}

inline double svm_score(const SvmModel& model, std::span<const double> x) {
  return 1.0 / (1.0 + std::exp(-svm_margin(model, x)));
}

}  // namespace idsbench
