#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "idsbench/matrix.hpp"
#include "idsbench/rng.hpp"

namespace idsbench {

enum class SplitCriterion { gini, gain_ratio };

struct TreeConfig {
  int max_depth = 30;
  std::size_t min_node_size = 2;      // rows required to attempt a split
  SplitCriterion criterion = SplitCriterion::gini;
  std::size_t features_per_split = 0;  // 0 = evaluate all features
};

/// feature < 0 marks a leaf. Classification leaves carry class counts,
/// regression leaves carry the fitted value.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double n0 = 0.0;
  double n1 = 0.0;
  double value = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  const TreeNode& leaf_for(std::span<const double> x) const {
    std::int32_t i = 0;
    while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
      const TreeNode& nd = nodes[static_cast<std::size_t>(i)];
      i = (x[static_cast<std::size_t>(nd.feature)] <= nd.threshold) ? nd.left
                                                                    : nd.right;
    }
    return nodes[static_cast<std::size_t>(i)];
  }

  /// Attack-class fraction at the reached leaf.
  double class_fraction(std::span<const double> x) const {
    const TreeNode& leaf = leaf_for(x);
    double total = leaf.n0 + leaf.n1;
    return total > 0.0 ? leaf.n1 / total : 0.5;
  }

  double regression_value(std::span<const double> x) const {
    return leaf_for(x).value;
  }
};

namespace tree_detail {

// Candidate thresholds are midpoints between consecutive distinct sorted
// values; when the midpoint rounds up to the higher value it falls back to
// the lower one so `x <= threshold` still routes the left rows left.
inline double split_threshold(double lo, double hi) {
  double mid = lo + (hi - lo) / 2.0;
  return mid < hi ? mid : lo;
}

inline double entropy2(double a, double b) {
  double n = a + b;
  double h = 0.0;
  if (a > 0.0) h -= (a / n) * std::log2(a / n);
  if (b > 0.0) h -= (b / n) * std::log2(b / n);
  return h;
}

struct BestSplit {
  std::int32_t feature = -1;
  double threshold = 0.0;
  double score = 0.0;  // criterion-specific, larger is better
};

/// Exact greedy grower over presorted per-feature index arrays. Node
/// splits stably repartition every feature's segment, so per-node work is
/// linear after the single upfront sort.
class Grower {
 public:
  Grower(const DesignMatrix& data, std::vector<std::size_t> rows,
         const std::vector<double>* regression_targets, TreeConfig cfg,
         Rng* feature_rng)
      : data_(data),
        rows_(std::move(rows)),
        targets_(regression_targets),
        cfg_(cfg),
        rng_(feature_rng) {
    const std::size_t m = rows_.size();
    const std::size_t f = data_.cols;
    sorted_.resize(std::max<std::size_t>(f, 1));
    for (std::size_t j = 0; j < sorted_.size(); ++j) {
      auto& order = sorted_[j];
      order.resize(m);
      for (std::size_t i = 0; i < m; ++i)
        order[i] = static_cast<std::int32_t>(i);
      if (j >= f) continue;  // featureless matrix: keep identity order
      std::sort(order.begin(), order.end(),
                [&](std::int32_t a, std::int32_t b) {
                  double va = value_of(a, j), vb = value_of(b, j);
                  return va < vb || (va == vb && a < b);
                });
    }
    buffer_.resize(m);
    side_.resize(m);
  }

  Tree grow() {
    Tree tree;
    grow_node(tree, 0, rows_.size(), 0);
    return tree;
  }

 private:
  double value_of(std::int32_t pos, std::size_t feature) const {
    return data_.at(rows_[static_cast<std::size_t>(pos)], feature);
  }
  double label_of(std::int32_t pos) const {
    return data_.labels[rows_[static_cast<std::size_t>(pos)]];
  }
  double target_of(std::int32_t pos) const {
    return (*targets_)[rows_[static_cast<std::size_t>(pos)]];
  }

  std::vector<std::size_t> candidate_features() {
    const std::size_t f = data_.cols;
    std::vector<std::size_t> all(f);
    for (std::size_t j = 0; j < f; ++j) all[j] = j;
    if (cfg_.features_per_split == 0 || cfg_.features_per_split >= f ||
        rng_ == nullptr)
      return all;
    for (std::size_t i = 0; i < cfg_.features_per_split; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng_->below(f - i));
      std::swap(all[i], all[j]);
    }
    all.resize(cfg_.features_per_split);
    std::sort(all.begin(), all.end());
    return all;
  }

  BestSplit find_split_classification(std::size_t lo, std::size_t hi,
                                      std::int64_t c0, std::int64_t c1,
                                      const std::vector<std::size_t>& feats) {
    const double n = static_cast<double>(hi - lo);
    BestSplit best;
    if (cfg_.criterion == SplitCriterion::gini) {
      // maximize sum of squared class counts over sizes; equivalent to
      // minimizing weighted child gini
      best.score = (static_cast<double>(c0) * static_cast<double>(c0) +
                    static_cast<double>(c1) * static_cast<double>(c1)) /
                   n;
      for (std::size_t f : feats) {
        const auto& order = sorted_[f];
        std::int64_t l0 = 0, l1 = 0;
        for (std::size_t i = lo; i + 1 < hi; ++i) {
          (label_of(order[i]) > 0.5 ? l1 : l0)++;
          double v = value_of(order[i], f);
          double vn = value_of(order[i + 1], f);
          if (!(vn > v)) continue;
          double nl = static_cast<double>(i - lo + 1);
          double nr = n - nl;
          std::int64_t r0 = c0 - l0, r1 = c1 - l1;
          double score =
              (static_cast<double>(l0) * static_cast<double>(l0) +
               static_cast<double>(l1) * static_cast<double>(l1)) /
                  nl +
              (static_cast<double>(r0) * static_cast<double>(r0) +
               static_cast<double>(r1) * static_cast<double>(r1)) /
                  nr;
          if (score > best.score) {
            best.feature = static_cast<std::int32_t>(f);
            best.threshold = split_threshold(v, vn);
            best.score = score;
          }
        }
      }
    } else {
      double h_parent = entropy2(static_cast<double>(c0),
                                 static_cast<double>(c1));
      best.score = 0.0;  // gain ratio must be strictly positive
      for (std::size_t f : feats) {
        const auto& order = sorted_[f];
        std::int64_t l0 = 0, l1 = 0;
        for (std::size_t i = lo; i + 1 < hi; ++i) {
          (label_of(order[i]) > 0.5 ? l1 : l0)++;
          double v = value_of(order[i], f);
          double vn = value_of(order[i + 1], f);
          if (!(vn > v)) continue;
          double nl = static_cast<double>(i - lo + 1);
          double nr = n - nl;
          double gain = h_parent -
                        (nl / n) * entropy2(static_cast<double>(l0),
                                            static_cast<double>(l1)) -
                        (nr / n) * entropy2(static_cast<double>(c0 - l0),
                                            static_cast<double>(c1 - l1));
          if (gain <= 0.0) continue;
          double ratio = gain / entropy2(nl, nr);
          if (ratio > best.score) {
            best.feature = static_cast<std::int32_t>(f);
            best.threshold = split_threshold(v, vn);
            best.score = ratio;
          }
        }
      }
    }
    return best;
  }

  BestSplit find_split_regression(std::size_t lo, std::size_t hi,
                                  double total_sum,
                                  const std::vector<std::size_t>& feats) {
    const double n = static_cast<double>(hi - lo);
    BestSplit best;
    best.score = total_sum * total_sum / n;
    for (std::size_t f : feats) {
      const auto& order = sorted_[f];
      double lsum = 0.0;
      for (std::size_t i = lo; i + 1 < hi; ++i) {
        lsum += target_of(order[i]);
        double v = value_of(order[i], f);
        double vn = value_of(order[i + 1], f);
        if (!(vn > v)) continue;
        double nl = static_cast<double>(i - lo + 1);
        double nr = n - nl;
        double rsum = total_sum - lsum;
        double score = lsum * lsum / nl + rsum * rsum / nr;
        if (score > best.score) {
          best.feature = static_cast<std::int32_t>(f);
          best.threshold = split_threshold(v, vn);
          best.score = score;
        }
      }
    }
    return best;
  }

  std::int32_t grow_node(Tree& tree, std::size_t lo, std::size_t hi,
                         int depth) {
    const auto node_id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    const std::size_t m = hi - lo;
    const auto& any_order = sorted_[0];

    std::int64_t c0 = 0, c1 = 0;
    double sum = 0.0;
    if (targets_ == nullptr) {
      for (std::size_t i = lo; i < hi; ++i)
        (label_of(any_order[i]) > 0.5 ? c1 : c0)++;
    } else {
      for (std::size_t i = lo; i < hi; ++i) sum += target_of(any_order[i]);
    }

    auto make_leaf = [&] {
      TreeNode& nd = tree.nodes[static_cast<std::size_t>(node_id)];
      nd.n0 = static_cast<double>(c0);
      nd.n1 = static_cast<double>(c1);
      nd.value = (targets_ != nullptr && m > 0)
                     ? sum / static_cast<double>(m)
                     : 0.0;
      return node_id;
    };

    bool pure = (targets_ == nullptr) && (c0 == 0 || c1 == 0);
    if (pure || depth >= cfg_.max_depth || m < cfg_.min_node_size || m < 2)
      return make_leaf();

    auto feats = candidate_features();
    BestSplit best =
        (targets_ == nullptr)
            ? find_split_classification(lo, hi, c0, c1, feats)
            : find_split_regression(lo, hi, sum, feats);
    if (best.feature < 0) return make_leaf();

    // stable two-way partition of every feature's segment
    const auto f_star = static_cast<std::size_t>(best.feature);
    std::size_t nl = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      std::int32_t pos = sorted_[f_star][i];
      bool left = value_of(pos, f_star) <= best.threshold;
      side_[static_cast<std::size_t>(pos)] = left ? 1 : 0;
      nl += left;
    }
    for (auto& order : sorted_) {
      std::size_t wl = lo, wr = lo + nl;
      for (std::size_t i = lo; i < hi; ++i)
        buffer_[i - lo] = order[i];
      for (std::size_t i = 0; i < m; ++i) {
        std::int32_t pos = buffer_[i];
        if (side_[static_cast<std::size_t>(pos)])
          order[wl++] = pos;
        else
          order[wr++] = pos;
      }
    }

    std::int32_t left_id = grow_node(tree, lo, lo + nl, depth + 1);
    std::int32_t right_id = grow_node(tree, lo + nl, hi, depth + 1);
    TreeNode& nd = tree.nodes[static_cast<std::size_t>(node_id)];
    nd.feature = best.feature;
    nd.threshold = best.threshold;
    nd.left = left_id;
    nd.right = right_id;
    nd.n0 = static_cast<double>(c0);
    nd.n1 = static_cast<double>(c1);
    nd.value = (targets_ != nullptr && m > 0) ? sum / static_cast<double>(m)
                                              : 0.0;
    return node_id;
  }

  const DesignMatrix& data_;
  std::vector<std::size_t> rows_;
  const std::vector<double>* targets_;  // nullptr = classification
  TreeConfig cfg_;
  Rng* rng_;
  std::vector<std::vector<std::int32_t>> sorted_;
  std::vector<std::int32_t> buffer_;
  std::vector<std::uint8_t> side_;
};

}  // namespace tree_detail

/// CART-style classification tree over the given training rows (indices may
/// repeat, e.g. bootstrap samples).
inline Tree grow_classification_tree(const DesignMatrix& data,
                                     std::vector<std::size_t> rows,
                                     const TreeConfig& cfg,
                                     Rng* feature_rng = nullptr) {
  tree_detail::Grower grower(data, std::move(rows), nullptr, cfg, feature_rng);
  return grower.grow();
}

/// Squared-error regression tree on per-matrix-row targets.
inline Tree grow_regression_tree(const DesignMatrix& data,
                                 std::vector<std::size_t> rows,
                                 const std::vector<double>& targets,
                                 const TreeConfig& cfg) {
  tree_detail::Grower grower(data, std::move(rows), &targets, cfg, nullptr);
  return grower.grow();
}

inline std::vector<std::size_t> identity_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  return rows;
}

}  // namespace idsbench
