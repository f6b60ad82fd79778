#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "idsbench/error.hpp"
#include "idsbench/matrix.hpp"
#include "idsbench/rng.hpp"

namespace idsbench {

/// Deterministic membership split over binary labels. Train gets
/// floor(n * fraction) rows; membership is drawn with a seeded mt19937_64
/// shuffle and both parts come back in ascending row order. Stratified mode
/// shuffles within each label class and keeps the class ratio in both parts
/// (±1 row per class).
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
partition_indices(const std::vector<std::uint8_t>& labels, double fraction,
                  std::uint64_t seed, bool stratified) {
  const std::size_t n = labels.size();
  const auto train_n =
      static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction));
  if (n == 0 || train_n == 0 || train_n >= n)
    throw Error(ErrorCode::DegeneratePartition,
                "fraction " + std::to_string(fraction) + " of " +
                    std::to_string(n) + " rows leaves an empty part");

  Rng rng(seed);
  std::vector<std::size_t> train_idx;
  train_idx.reserve(train_n);

  if (!stratified) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    train_idx.assign(perm.begin(), perm.begin() + static_cast<long>(train_n));
  } else {
    std::vector<std::vector<std::size_t>> byclass(2);
    for (std::size_t i = 0; i < n; ++i) byclass[labels[i] ? 1 : 0].push_back(i);
    std::size_t taken = 0;
    std::vector<std::size_t> take(2);
    std::vector<double> frac(2);
    for (int c = 0; c < 2; ++c) {
      double target = static_cast<double>(byclass[c].size()) * fraction;
      take[c] = static_cast<std::size_t>(std::floor(target));
      frac[c] = target - std::floor(target);
      taken += take[c];
    }
    // flooring both classes can fall one short of the overall floor
    while (taken < train_n) {
      int c = (frac[0] >= frac[1]) ? 0 : 1;
      if (take[c] >= byclass[c].size()) c = 1 - c;
      ++take[c];
      frac[c] = 0.0;
      ++taken;
    }
    for (int c = 0; c < 2; ++c) {
      rng.shuffle(byclass[c]);
      train_idx.insert(train_idx.end(), byclass[c].begin(),
                       byclass[c].begin() + static_cast<long>(take[c]));
    }
  }

  std::vector<bool> in_train(n, false);
  for (std::size_t i : train_idx) in_train[i] = true;
  std::vector<std::size_t> train_sorted, test_sorted;
  train_sorted.reserve(train_n);
  test_sorted.reserve(n - train_n);
  for (std::size_t i = 0; i < n; ++i)
    (in_train[i] ? train_sorted : test_sorted).push_back(i);
  return {std::move(train_sorted), std::move(test_sorted)};
}

/// Seeded stratified row subsample used by the SVM/PNN/kNN caps: keeps the
/// class ratio of `labels`, returns ascending row indices. cap == 0 means
/// "no cap"; a cap at or above n returns all rows.
inline std::vector<std::size_t> stratified_cap(
    const std::vector<std::uint8_t>& labels, std::size_t cap,
    std::uint64_t seed) {
  const std::size_t n = labels.size();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  if (cap == 0 || cap >= n) return all;

  std::vector<std::vector<std::size_t>> byclass(2);
  for (std::size_t i = 0; i < n; ++i) byclass[labels[i] ? 1 : 0].push_back(i);
  std::size_t take1 = cap * byclass[1].size() / n;
  std::size_t take0 = cap - take1;
  if (take0 > byclass[0].size()) {
    take1 += take0 - byclass[0].size();
    take0 = byclass[0].size();
  }
  if (take1 > byclass[1].size()) {
    take0 += take1 - byclass[1].size();
    take1 = byclass[1].size();
  }

  Rng rng(seed);
  std::vector<std::size_t> picked;
  picked.reserve(cap);
  const std::size_t takes[2] = {take0, take1};
  for (int c = 0; c < 2; ++c) {
    rng.shuffle(byclass[c]);
    picked.insert(picked.end(), byclass[c].begin(),
                  byclass[c].begin() + static_cast<long>(takes[c]));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace idsbench
