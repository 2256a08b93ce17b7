#ifndef MULLAB_DATASET_HPP
#define MULLAB_DATASET_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "label_set.hpp"

namespace mullab {

enum class AttributeKind { numeric, nominal };

// One cell of a feature vector: a real number, a category index, or missing.
// The attribute's kind in the schema decides how a present value is read.
class AttributeValue {
 public:
  AttributeValue() = default;

  static AttributeValue numeric(double v) { return AttributeValue(v); }
  static AttributeValue nominal(std::size_t category) {
    return AttributeValue(static_cast<double>(category));
  }
  static AttributeValue missing() { return AttributeValue(); }

  bool is_missing() const noexcept { return std::isnan(value_); }
  double number() const noexcept { return value_; }
  std::size_t category() const noexcept { return static_cast<std::size_t>(value_); }

  bool operator==(const AttributeValue& o) const noexcept {
    return (is_missing() && o.is_missing()) || value_ == o.value_;
  }

 private:
  explicit AttributeValue(double v) : value_(v) {}

  double value_ = std::numeric_limits<double>::quiet_NaN();
};

using FeatureVector = std::vector<AttributeValue>;

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::numeric;
  std::vector<std::string> categories;  // nominal only

  static Attribute numeric(std::string name) { return {std::move(name), AttributeKind::numeric, {}}; }
  static Attribute nominal(std::string name, std::vector<std::string> values) {
    return {std::move(name), AttributeKind::nominal, std::move(values)};
  }

  bool is_nominal() const noexcept { return kind == AttributeKind::nominal; }
  std::size_t category_count() const noexcept { return categories.size(); }

  bool operator==(const Attribute&) const = default;
};

struct Schema {
  std::vector<Attribute> attributes;
  std::vector<std::string> label_names;

  std::size_t num_attributes() const noexcept { return attributes.size(); }
  std::size_t num_labels() const noexcept { return label_names.size(); }

  void validate() const {
    std::unordered_set<std::string> names;
    for (const auto& a : attributes)
      if (!names.insert(a.name).second) throw DataError("duplicate attribute name '" + a.name + "'");
    std::unordered_set<std::string> labels;
    for (const auto& l : label_names) {
      if (!labels.insert(l).second) throw DataError("duplicate label name '" + l + "'");
      if (names.count(l)) throw DataError("label '" + l + "' is also a feature attribute");
    }
  }

  // Throws DataError unless x has one value per attribute of the right kind.
  void check_conforms(const FeatureVector& x) const {
    if (x.size() != attributes.size())
      throw DataError("feature vector has " + std::to_string(x.size()) + " values, schema has " +
                      std::to_string(attributes.size()));
    for (std::size_t a = 0; a < x.size(); ++a) {
      if (x[a].is_missing() || !attributes[a].is_nominal()) continue;
      const double v = x[a].number();
      if (v < 0 || v != std::floor(v) || x[a].category() >= attributes[a].category_count())
        throw DataError("attribute '" + attributes[a].name + "' has invalid category index");
    }
  }

  bool operator==(const Schema&) const = default;
};

// Multi-label dataset: N feature vectors, each paired with a labelset over M labels.
class MLDataset {
 public:
  MLDataset() = default;

  explicit MLDataset(Schema schema) : schema_(std::move(schema)) { schema_.validate(); }

  MLDataset(Schema schema, std::vector<FeatureVector> features, std::vector<LabelSet> labels)
      : MLDataset(std::move(schema)) {
    if (features.size() != labels.size())
      throw DataError("feature and label row counts differ");
    features_.reserve(features.size());
    labels_.reserve(labels.size());
    for (std::size_t i = 0; i < features.size(); ++i) add(std::move(features[i]), std::move(labels[i]));
  }

  void add(FeatureVector x, LabelSet y) {
    schema_.check_conforms(x);
    if (y.universe() != schema_.num_labels())
      throw LabelSpaceError("labelset universe " + std::to_string(y.universe()) +
                            " does not match dataset with " + std::to_string(schema_.num_labels()) +
                            " labels");
    features_.push_back(std::move(x));
    labels_.push_back(std::move(y));
  }

  const Schema& schema() const noexcept { return schema_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  std::size_t num_labels() const noexcept { return schema_.num_labels(); }

  const std::vector<FeatureVector>& features() const noexcept { return features_; }
  const std::vector<LabelSet>& labels() const noexcept { return labels_; }
  const FeatureVector& features(std::size_t i) const { return features_.at(i); }
  const LabelSet& labels(std::size_t i) const { return labels_.at(i); }

  // New dataset holding the given rows, in the given order (repeats allowed).
  MLDataset subset(const std::vector<std::size_t>& rows) const {
    MLDataset out(schema_);
    out.features_.reserve(rows.size());
    out.labels_.reserve(rows.size());
    for (auto r : rows) {
      out.features_.push_back(features_.at(r));
      out.labels_.push_back(labels_.at(r));
    }
    return out;
  }

  // Same rows, labels restricted to `label_indices` (renumbered 0..k-1 in that order).
  MLDataset restrict_labels(const std::vector<std::size_t>& label_indices) const {
    Schema s = schema_;
    s.label_names.clear();
    for (auto j : label_indices) s.label_names.push_back(schema_.label_names.at(j));
    MLDataset out(std::move(s));
    out.features_ = features_;
    out.labels_.reserve(labels_.size());
    for (const auto& y : labels_) {
      LabelSet r(label_indices.size());
      for (std::size_t k = 0; k < label_indices.size(); ++k)
        if (y.test(label_indices[k])) r.set(k);
      out.labels_.push_back(std::move(r));
    }
    return out;
  }

 private:
  Schema schema_;
  std::vector<FeatureVector> features_;
  std::vector<LabelSet> labels_;
};

struct DatasetStats {
  std::size_t n_instances = 0;
  std::size_t n_labels = 0;
  double lcard = 0.0;
  double lden = 0.0;  // lcard / M over the schema label universe
  std::size_t distinct_labelsets = 0;
  std::size_t observed_labels = 0;  // |union of all Y_i|
  double observed_lden = 0.0;       // lcard / observed_labels (0 when no label is ever set)
};

// Mean number of labels per instance.
inline double label_cardinality(const MLDataset& d) {
  if (d.empty()) throw DataError("label cardinality of an empty dataset");
  double total = 0.0;
  for (const auto& y : d.labels()) total += static_cast<double>(y.cardinality());
  return total / static_cast<double>(d.size());
}

// Label cardinality divided by the schema's label count M.
inline double label_density(const MLDataset& d) {
  if (d.num_labels() == 0) throw DataError("label density with zero labels");
  return label_cardinality(d) / static_cast<double>(d.num_labels());
}

inline DatasetStats dataset_stats(const MLDataset& d) {
  DatasetStats st;
  st.n_instances = d.size();
  st.n_labels = d.num_labels();
  st.lcard = label_cardinality(d);
  st.lden = st.n_labels == 0 ? 0.0 : st.lcard / static_cast<double>(st.n_labels);
  std::unordered_set<LabelSet, LabelSetHash> distinct(d.labels().begin(), d.labels().end());
  st.distinct_labelsets = distinct.size();
  LabelSet seen(d.num_labels());
  for (const auto& y : d.labels()) seen = seen | y;
  st.observed_labels = seen.cardinality();
  st.observed_lden = st.observed_labels == 0 ? 0.0 : st.lcard / static_cast<double>(st.observed_labels);
  return st;
}

}  // namespace mullab

#endif  // MULLAB_DATASET_HPP
