#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "idsbench/arff.hpp"
#include "idsbench/error.hpp"
#include "idsbench/matrix.hpp"
#include "idsbench/rng.hpp"
#include "idsbench/sampling.hpp"

namespace idsbench {

/// Per-feature encoding parameters, fitted from training data only.
struct FeatureSpec {
  enum class Kind { numeric, one_hot };
  Kind kind = Kind::numeric;
  std::string attribute_name;
  double train_mean = 0.0;              // numeric
  double train_std = 0.0;               // numeric, population divisor
  std::vector<std::string> vocabulary;  // one_hot, first-appearance order

  std::size_t width() const {
    return kind == Kind::numeric ? 1 : vocabulary.size();
  }

  bool operator==(const FeatureSpec&) const = default;
};

struct FeatureSchema {
  std::string label_attribute;
  std::string positive_label;
  std::size_t label_index = 0;  // position of the label in the source doc
  std::vector<FeatureSpec> features;

  std::size_t total_width() const {
    std::size_t w = 0;
    for (const auto& f : features) w += f.width();
    return w;
  }

  bool operator==(const FeatureSchema&) const = default;
};

namespace detail {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace detail

/// Learn imputation/encoding/scaling parameters from the training document.
/// Numeric statistics ignore missing cells; nominal vocabularies collect
/// observed values in first-appearance order.
inline FeatureSchema fit_schema(const ArffDocument& train,
                                const std::string& label_attribute,
                                const std::string& positive_label) {
  std::size_t label_idx = train.attribute_index(label_attribute);
  if (label_idx == train.attributes.size())
    throw Error(ErrorCode::LabelNotFound,
                "no attribute named '" + label_attribute + "'");
  const ArffAttribute& label_attr = train.attributes[label_idx];
  if (label_attr.kind != AttrKind::nominal)
    throw Error(ErrorCode::LabelNotFound,
                "label attribute '" + label_attribute + "' is not nominal");
  bool has_positive = false;
  for (const auto& v : label_attr.values) has_positive |= (v == positive_label);
  if (!has_positive)
    throw Error(ErrorCode::LabelNotFound,
                "label attribute '" + label_attribute +
                    "' does not declare value '" + positive_label + "'");

  FeatureSchema schema;
  schema.label_attribute = label_attribute;
  schema.positive_label = positive_label;
  schema.label_index = label_idx;

  for (std::size_t a = 0; a < train.attributes.size(); ++a) {
    if (a == label_idx) continue;
    const ArffAttribute& attr = train.attributes[a];
    FeatureSpec spec;
    spec.attribute_name = attr.name;
    if (attr.kind == AttrKind::numeric) {
      spec.kind = FeatureSpec::Kind::numeric;
      detail::KahanSum sum;
      std::size_t n = 0;
      for (const auto& row : train.instances) {
        const ArffValue& v = row[a];
        if (v.is_missing()) continue;
        sum.add(v.as_number());
        ++n;
      }
      if (n == 0)
        throw Error(ErrorCode::AllMissingColumn,
                    "numeric column '" + attr.name + "' has no observed values");
      spec.train_mean = sum.sum / static_cast<double>(n);
      detail::KahanSum sq;
      for (const auto& row : train.instances) {
        const ArffValue& v = row[a];
        if (v.is_missing()) continue;
        double d = v.as_number() - spec.train_mean;
        sq.add(d * d);
      }
      spec.train_std = std::sqrt(sq.sum / static_cast<double>(n));
    } else {
      spec.kind = FeatureSpec::Kind::one_hot;
      std::vector<bool> seen(attr.values.size(), false);
      for (const auto& row : train.instances) {
        const ArffValue& v = row[a];
        if (v.is_missing()) continue;
        auto idx = static_cast<std::size_t>(v.nominal_index());
        if (!seen[idx]) {
          seen[idx] = true;
          spec.vocabulary.push_back(attr.values[idx]);
        }
      }
    }
    schema.features.push_back(std::move(spec));
  }
  return schema;
}

namespace detail {

inline void check_schema_compat(const FeatureSchema& schema,
                                const ArffDocument& doc) {
  if (doc.attributes.size() != schema.features.size() + 1)
    throw Error(ErrorCode::SchemaMismatch,
                "document has " + std::to_string(doc.attributes.size()) +
                    " attributes, schema expects " +
                    std::to_string(schema.features.size() + 1));
  std::size_t f = 0;
  for (std::size_t a = 0; a < doc.attributes.size(); ++a) {
    const ArffAttribute& attr = doc.attributes[a];
    if (a == schema.label_index) {
      if (attr.name != schema.label_attribute ||
          attr.kind != AttrKind::nominal)
        throw Error(ErrorCode::SchemaMismatch,
                    "label attribute mismatch at position " +
                        std::to_string(a));
      continue;
    }
    const FeatureSpec& spec = schema.features[f++];
    bool kind_ok = (spec.kind == FeatureSpec::Kind::numeric)
                       ? attr.kind == AttrKind::numeric
                       : attr.kind == AttrKind::nominal;
    if (attr.name != spec.attribute_name || !kind_ok)
      throw Error(ErrorCode::SchemaMismatch,
                  "attribute '" + attr.name + "' does not match schema entry '" +
                      spec.attribute_name + "'");
  }
}

}  // namespace detail

/// Encode a document with fitted parameters. Missing numerics impute to the
/// training mean (scaled 0); nominal values outside the training vocabulary
/// (and missing nominals) emit an all-zero indicator block.
inline DesignMatrix apply_schema(const FeatureSchema& schema,
                                 const ArffDocument& doc) {
  detail::check_schema_compat(schema, doc);

  DesignMatrix m;
  m.rows = doc.instances.size();
  m.cols = schema.total_width();
  m.values.assign(m.rows * m.cols, 0.0);
  m.labels.resize(m.rows);
  m.row_provenance.resize(m.rows);

  std::size_t start = 0;
  for (const auto& spec : schema.features) {
    m.column_groups.push_back({spec.kind == FeatureSpec::Kind::numeric
                                   ? ColumnGroup::Kind::numeric
                                   : ColumnGroup::Kind::one_hot,
                               start, spec.width(), spec.attribute_name});
    start += spec.width();
  }

  const ArffAttribute& label_attr = doc.attributes[schema.label_index];
  for (std::size_t r = 0; r < m.rows; ++r) {
    const auto& row = doc.instances[r];
    double* out = m.values.data() + r * m.cols;
    std::size_t col = 0;
    std::size_t f = 0;
    for (std::size_t a = 0; a < doc.attributes.size(); ++a) {
      if (a == schema.label_index) {
        const ArffValue& v = row[a];
        bool positive =
            !v.is_missing() &&
            label_attr.values[static_cast<std::size_t>(v.nominal_index())] ==
                schema.positive_label;
        m.labels[r] = positive ? 1 : 0;
        continue;
      }
      const FeatureSpec& spec = schema.features[f++];
      const ArffValue& v = row[a];
      if (spec.kind == FeatureSpec::Kind::numeric) {
        if (!v.is_missing() && spec.train_std > 0.0)
          out[col] = (v.as_number() - spec.train_mean) / spec.train_std;
        // missing or zero-variance column: stays 0
        ++col;
      } else {
        if (!v.is_missing()) {
          const std::string& value =
              doc.attributes[a].values[static_cast<std::size_t>(
                  v.nominal_index())];
          for (std::size_t j = 0; j < spec.vocabulary.size(); ++j)
            if (spec.vocabulary[j] == value) {
              out[col + j] = 1.0;
              break;
            }
        }
        col += spec.width();
      }
    }
    m.row_provenance[r] = r;
  }
  return m;
}

/// 70/30-style split of an encoded matrix; see partition_indices for the
/// membership rules.
inline std::pair<DesignMatrix, DesignMatrix> partition(
    const DesignMatrix& matrix, double fraction, std::uint64_t seed,
    bool stratified) {
  auto [train_idx, test_idx] =
      partition_indices(matrix.labels, fraction, seed, stratified);
  return {matrix.subset(train_idx), matrix.subset(test_idx)};
}

// --- JSON persistence ------------------------------------------------------

inline constexpr int kSchemaFormatVersion = 1;

inline nlohmann::json schema_to_json(const FeatureSchema& schema) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& f : schema.features) {
    if (f.kind == FeatureSpec::Kind::numeric) {
      features.push_back({{"name", f.attribute_name},
                          {"kind", "numeric"},
                          {"mean", f.train_mean},
                          {"std", f.train_std}});
    } else {
      features.push_back({{"name", f.attribute_name},
                          {"kind", "one_hot"},
                          {"vocabulary", f.vocabulary}});
    }
  }
  return {{"format_version", kSchemaFormatVersion},
          {"label_attribute", schema.label_attribute},
          {"positive_label", schema.positive_label},
          {"label_index", schema.label_index},
          {"features", std::move(features)}};
}

inline FeatureSchema schema_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format_version", -1) != kSchemaFormatVersion)
    throw Error(ErrorCode::BadModelFile, "unsupported schema format version");
  FeatureSchema schema;
  schema.label_attribute = j.at("label_attribute").get<std::string>();
  schema.positive_label = j.at("positive_label").get<std::string>();
  schema.label_index = j.at("label_index").get<std::size_t>();
  for (const auto& jf : j.at("features")) {
    FeatureSpec f;
    f.attribute_name = jf.at("name").get<std::string>();
    if (jf.at("kind") == "numeric") {
      f.kind = FeatureSpec::Kind::numeric;
      f.train_mean = jf.at("mean").get<double>();
      f.train_std = jf.at("std").get<double>();
    } else {
      f.kind = FeatureSpec::Kind::one_hot;
      f.vocabulary = jf.at("vocabulary").get<std::vector<std::string>>();
    }
    schema.features.push_back(std::move(f));
  }
  return schema;
}

}  // namespace idsbench
