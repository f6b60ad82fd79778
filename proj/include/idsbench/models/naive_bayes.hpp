#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "idsbench/matrix.hpp"

namespace idsbench {

/// Mixed-feature naive Bayes: per-class Gaussians on original numeric
/// columns, Laplace-smoothed categoricals on one-hot blocks. Blocks are
/// identified through the matrix's column groups; a matrix without group
/// metadata is treated as all-numeric. Posteriors are compared in log
/// space.
struct BayesModel {
  struct NumericFeature {
    std::size_t column = 0;
    double mean[2] = {0.0, 0.0};
    double variance[2] = {0.0, 0.0};  // floored
  };
  /// One-hot block as a categorical over width+1 outcomes; the extra
  /// outcome is the all-zero block (missing or out-of-vocabulary value).
  struct CategoricalFeature {
    std::size_t start = 0;
    std::size_t width = 0;
    std::vector<double> log_prob[2];  // size width+1
  };

  double prior[2] = {0.0, 0.0};
  std::vector<NumericFeature> numeric;
  std::vector<CategoricalFeature> categorical;
  double laplace_alpha = 1.0;
  double variance_floor = 1e-9;
};

namespace bayes_detail {

inline std::size_t block_outcome(std::span<const double> x, std::size_t start,
                                 std::size_t width) {
  for (std::size_t j = 0; j < width; ++j)
    if (x[start + j] > 0.5) return j;
  return width;  // all-zero indicator block
}

}  // namespace bayes_detail

inline BayesModel train_naive_bayes(const DesignMatrix& data,
                                    double laplace_alpha,
                                    double variance_floor) {
  BayesModel model;
  model.laplace_alpha = laplace_alpha;
  model.variance_floor = variance_floor;

  const std::size_t n = data.rows;
  std::size_t n_class[2] = {data.count_label(0), 0};
  n_class[1] = n - n_class[0];
  for (int c = 0; c < 2; ++c)
    model.prior[c] = static_cast<double>(n_class[c]) / static_cast<double>(n);

  std::vector<ColumnGroup> groups = data.column_groups;
  if (groups.empty())
    for (std::size_t j = 0; j < data.cols; ++j)
      groups.push_back({ColumnGroup::Kind::numeric, j, 1, ""});

  for (const auto& g : groups) {
    if (g.kind == ColumnGroup::Kind::numeric) {
      BayesModel::NumericFeature f;
      f.column = g.start;
      double sum[2] = {0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i)
        sum[data.labels[i]] += data.at(i, g.start);
      for (int c = 0; c < 2; ++c)
        f.mean[c] = sum[c] / static_cast<double>(n_class[c]);
      double sq[2] = {0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) {
        double d = data.at(i, g.start) - f.mean[data.labels[i]];
        sq[data.labels[i]] += d * d;
      }
      for (int c = 0; c < 2; ++c) {
        f.variance[c] = sq[c] / static_cast<double>(n_class[c]);
        if (f.variance[c] < variance_floor) f.variance[c] = variance_floor;
      }
      model.numeric.push_back(f);
    } else {
      BayesModel::CategoricalFeature f;
      f.start = g.start;
      f.width = g.width;
      std::vector<std::size_t> counts[2];
      counts[0].assign(g.width + 1, 0);
      counts[1].assign(g.width + 1, 0);
      for (std::size_t i = 0; i < n; ++i)
        counts[data.labels[i]]
              [bayes_detail::block_outcome(data.row(i), g.start, g.width)]++;
      for (int c = 0; c < 2; ++c) {
        f.log_prob[c].resize(g.width + 1);
        double denom = static_cast<double>(n_class[c]) +
                       laplace_alpha * static_cast<double>(g.width + 1);
        for (std::size_t o = 0; o <= g.width; ++o)
          f.log_prob[c][o] = std::log(
              (static_cast<double>(counts[c][o]) + laplace_alpha) / denom);
      }
      model.categorical.push_back(std::move(f));
    }
  }
  return model;
}

/// Attack-class posterior probability.
inline double bayes_score(const BayesModel& model, std::span<const double> x) {
  constexpr double kLogTwoPi = 1.8378770664093453;
  double lp[2];
  for (int c = 0; c < 2; ++c) {
    lp[c] = std::log(model.prior[c]);
    for (const auto& f : model.numeric) {
      double d = x[f.column] - f.mean[c];
      lp[c] += -0.5 * (kLogTwoPi + std::log(f.variance[c])) -
               d * d / (2.0 * f.variance[c]);
    }
    for (const auto& f : model.categorical)
      lp[c] += f.log_prob[c][bayes_detail::block_outcome(x, f.start, f.width)];
  }
  double hi = lp[0] > lp[1] ? lp[0] : lp[1];
  double z0 = std::exp(lp[0] - hi), z1 = std::exp(lp[1] - hi);
  return z1 / (z0 + z1);
}

}  // namespace idsbench
