#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "idsbench/matrix.hpp"
#include "idsbench/parallel.hpp"
#include "idsbench/rng.hpp"
#include "idsbench/sampling.hpp"

namespace idsbench {

/// Parzen-window classifier. Each class keeps its stored training patterns;
/// a class scores as its prior times the mean Gaussian kernel
/// exp(-||x-p||^2 / (2 sigma^2)) over those patterns.
struct PnnModel {
  double sigma = 1.0;
  double prior[2] = {0.0, 0.0};
  std::size_t width = 0;
  std::vector<double> patterns[2];  // row-major, count[c] x width
  std::size_t count[2] = {0, 0};
};

namespace pnn_detail {

/// log of the mean kernel value for one class, computed as a log-sum-exp.
inline double log_mean_kernel(const PnnModel& model, int cls,
                              std::span<const double> x) {
  const std::size_t m = model.count[cls];
  if (m == 0) return -std::numeric_limits<double>::infinity();
  const double inv = 1.0 / (2.0 * model.sigma * model.sigma);
  std::vector<double> exponents(m);
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double* p = model.patterns[cls].data() + i * model.width;
    double d2 = 0.0;
    for (std::size_t j = 0; j < model.width; ++j) {
      double d = x[j] - p[j];
      d2 += d * d;
    }
    exponents[i] = -d2 * inv;
    if (exponents[i] > hi) hi = exponents[i];
  }
  double sum = 0.0;
  for (double e : exponents) sum += std::exp(e - hi);
  return hi + std::log(sum) - std::log(static_cast<double>(m));
}

inline PnnModel build(const DesignMatrix& data,
                      const std::vector<std::size_t>& rows, double sigma) {
  PnnModel model;
  model.sigma = sigma;
  model.width = data.cols;
  for (std::size_t r : rows) {
    int c = data.labels[r] ? 1 : 0;
    auto row = data.row(r);
    model.patterns[c].insert(model.patterns[c].end(), row.begin(), row.end());
    model.count[c]++;
  }
  const auto total = static_cast<double>(rows.size());
  for (int c = 0; c < 2; ++c)
    model.prior[c] = static_cast<double>(model.count[c]) / total;
  return model;
}

}  // namespace pnn_detail

/// Attack-class posterior.
inline double pnn_score(const PnnModel& model, std::span<const double> x) {
  double lp[2];
  for (int c = 0; c < 2; ++c)
    lp[c] = std::log(model.prior[c]) + pnn_detail::log_mean_kernel(model, c, x);
  double hi = lp[0] > lp[1] ? lp[0] : lp[1];
  double z0 = std::exp(lp[0] - hi), z1 = std::exp(lp[1] - hi);
  return z1 / (z0 + z1);
}

inline constexpr double kPnnSigmaGrid[] = {0.25, 0.5, 1.0, 2.0};

/// sigma <= 0 selects from kPnnSigmaGrid by accuracy on a held-out 10% of
/// the (capped) training rows, then the returned model stores all capped
/// rows with the winning bandwidth.
inline PnnModel train_pnn(const DesignMatrix& data, double sigma,
                          std::size_t pattern_cap, std::uint64_t seed) {
  auto rows =
      stratified_cap(data.labels, pattern_cap, derive_seed(seed, "cap"));

  if (sigma <= 0.0) {
    std::vector<std::uint8_t> sub_labels;
    sub_labels.reserve(rows.size());
    for (std::size_t r : rows) sub_labels.push_back(data.labels[r]);
    auto [fit_part, holdout_part] = partition_indices(
        sub_labels, 0.9, derive_seed(seed, "sigma_holdout"), true);
    std::vector<std::size_t> fit_rows, holdout_rows;
    for (std::size_t i : fit_part) fit_rows.push_back(rows[i]);
    for (std::size_t i : holdout_part) holdout_rows.push_back(rows[i]);

    double best_acc = -1.0;
    double best_sigma = kPnnSigmaGrid[0];
    for (double candidate : kPnnSigmaGrid) {
      PnnModel probe = pnn_detail::build(data, fit_rows, candidate);
      std::vector<std::uint8_t> hits(holdout_rows.size());
      parallel_for(holdout_rows.size(), [&](std::size_t i) {
        std::size_t r = holdout_rows[i];
        bool attack = pnn_score(probe, data.row(r)) >= 0.5;
        hits[i] = (attack == (data.labels[r] != 0));
      });
      std::size_t correct = 0;
      for (auto h : hits) correct += h;
      double acc =
          static_cast<double>(correct) / static_cast<double>(hits.size());
      if (acc > best_acc) {
        best_acc = acc;
        best_sigma = candidate;
      }
    }
    sigma = best_sigma;
  }

  return pnn_detail::build(data, rows, sigma);
}

}  // namespace idsbench
