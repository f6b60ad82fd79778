#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace idsbench {

/// Column-block metadata carried along with a matrix so mixed-feature
/// models (naive Bayes) can tell original numeric columns from one-hot
/// indicator blocks. Empty column_groups means "all columns numeric".
struct ColumnGroup {
  enum class Kind { numeric, one_hot };
  Kind kind = Kind::numeric;
  std::size_t start = 0;
  std::size_t width = 1;
  std::string name;

  bool operator==(const ColumnGroup&) const = default;
};

/// Dense real-valued feature rows plus binary labels (attack = 1).
struct DesignMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;          // row-major, rows * cols
  std::vector<std::uint8_t> labels;    // size rows
  std::vector<std::size_t> row_provenance;
  std::vector<ColumnGroup> column_groups;

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols, cols};
  }
  double at(std::size_t i, std::size_t j) const {
    return values[i * cols + j];
  }

  std::size_t count_label(std::uint8_t label) const {
    std::size_t n = 0;
    for (auto l : labels) n += (l == label);
    return n;
  }

  /// Row subset preserving provenance and column metadata.
  DesignMatrix subset(const std::vector<std::size_t>& idx) const {
    DesignMatrix out;
    out.rows = idx.size();
    out.cols = cols;
    out.column_groups = column_groups;
    out.values.reserve(idx.size() * cols);
    out.labels.reserve(idx.size());
    out.row_provenance.reserve(idx.size());
    for (std::size_t i : idx) {
      auto r = row(i);
      out.values.insert(out.values.end(), r.begin(), r.end());
      out.labels.push_back(labels[i]);
      out.row_provenance.push_back(row_provenance[i]);
    }
    return out;
  }
};

}  // namespace idsbench
