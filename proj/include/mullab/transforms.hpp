#ifndef MULLAB_TRANSFORMS_HPP
#define MULLAB_TRANSFORMS_HPP

/*
 Problem transformations: multi-label models built from single-label learners.

   Binary Relevance  one binary classifier per label
   Label Powerset    one multiclass classifier over the distinct training labelsets
   RAKEL             LP models over random k-subsets of the labels, averaged per label
   Pruned Sets       LP after dropping rare labelsets and reintroducing their rows
                     under frequent subsets of the original labelset
*/

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "dataset.hpp"
#include "learner.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace mullab {

class BinaryRelevanceModel final : public MultiLabelModel {
 public:
  BinaryRelevanceModel(const MLDataset& train, const LearnerSpec& learner, std::size_t workers = 1)
      : per_label_(train.num_labels()) {
    if (train.num_labels() == 0) throw DataError("binary relevance needs at least one label");
    if (train.empty()) throw DataError("empty training set");
    const auto& attrs = train.schema().attributes;
    parallel_for(train.num_labels(), workers, [&](std::size_t j) {
      std::vector<std::size_t> cls(train.size());
      std::size_t positives = 0;
      for (std::size_t i = 0; i < train.size(); ++i) {
        cls[i] = train.labels(i).test(j) ? 1 : 0;
        positives += cls[i];
      }
      LabelModel& m = per_label_[j];
      if (positives == 0 || positives == train.size())
        m.constant = positives == 0 ? 0.0 : 1.0;
      else
        m.classifier = fit(learner, attrs, train.features(), cls, 2);
    });
  }

  std::size_t num_labels() const override { return per_label_.size(); }

  std::vector<double> predict_scores(const FeatureVector& x) const override {
    std::vector<double> s(per_label_.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      const auto& m = per_label_[j];
      s[j] = m.classifier ? m.classifier->predict_dist(x)[1] : m.constant;
    }
    return s;
  }

  // True when label j had a single observed value in training.
  bool is_constant(std::size_t j) const { return per_label_.at(j).classifier == nullptr; }

 private:
  struct LabelModel {
    std::shared_ptr<const Classifier> classifier;
    double constant = 0.0;
  };
  std::vector<LabelModel> per_label_;
};

class LabelPowersetModel final : public MultiLabelModel {
 public:
  LabelPowersetModel(const MLDataset& train, const LearnerSpec& learner) : num_labels_(train.num_labels()) {
    if (num_labels_ == 0) throw DataError("label powerset needs at least one label");
    if (train.empty()) throw DataError("empty training set");
    std::map<LabelSet, std::size_t> index;
    for (const auto& y : train.labels()) index.emplace(y, 0);
    for (auto& [set, c] : index) {
      c = labelsets_.size();
      labelsets_.push_back(set);
    }
    std::vector<std::size_t> cls;
    cls.reserve(train.size());
    for (const auto& y : train.labels()) cls.push_back(index.at(y));
    classifier_ = fit(learner, train.schema().attributes, train.features(), cls, labelsets_.size());
  }

  std::size_t num_labels() const override { return num_labels_; }

  // Score of label j = total probability of the labelsets containing j.
  std::vector<double> predict_scores(const FeatureVector& x) const override {
    const auto dist = classifier_->predict_dist(x);
    std::vector<double> s(num_labels_, 0.0);
    for (std::size_t c = 0; c < labelsets_.size(); ++c) {
      if (dist[c] == 0.0) continue;
      for (auto j : labelsets_[c].indices()) s[j] += dist[c];
    }
    for (auto& v : s) v = std::clamp(v, 0.0, 1.0);
    return s;
  }

  ClassDistribution predict_dist(const FeatureVector& x) const { return classifier_->predict_dist(x); }

  // The single most probable training labelset.
  const LabelSet& predict_labelset(const FeatureVector& x) const {
    return labelsets_[classifier_->predict_dist(x).argmax()];
  }

  // Class universe in class-index order (ascending bit pattern).
  const std::vector<LabelSet>& labelsets() const noexcept { return labelsets_; }

 private:
  std::size_t num_labels_;
  std::vector<LabelSet> labelsets_;
  std::shared_ptr<const Classifier> classifier_;
};

struct RakelParams {
  std::size_t m = 0;  // member count; 0 means 2M
  std::size_t k = 0;  // labelset size; 0 means min(3, M)
  std::uint64_t seed = 1;

  bool operator==(const RakelParams&) const = default;
};

namespace transforms_detail {

// C(n, r) saturated at `cap`.
inline std::size_t binomial_capped(std::size_t n, std::size_t r, std::size_t cap) {
  r = std::min(r, n - r);
  long double v = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    v = v * static_cast<long double>(n - r + i) / static_cast<long double>(i);
    if (v >= static_cast<long double>(cap)) return cap;
  }
  return static_cast<std::size_t>(v + 0.5L);
}

}  // namespace transforms_detail

// Draws m random k-subsets of {0..M-1}, each sorted ascending. Subsets do not
// repeat until every distinct k-subset has been drawn.
inline std::vector<std::vector<std::size_t>> rakel_labelsets(std::size_t num_labels, std::size_t m,
                                                             std::size_t k, std::uint64_t seed) {
  if (k < 1 || k > num_labels)
    throw ConfigError("RAKEL labelset size " + std::to_string(k) + " invalid for " +
                      std::to_string(num_labels) + " labels");
  if (m < 1) throw ConfigError("RAKEL needs at least one member");
  const std::size_t distinct = transforms_detail::binomial_capped(num_labels, k, m + 1);
  Rng rng(seed);
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> out;
  out.reserve(m);
  std::vector<std::size_t> pool(num_labels);
  while (out.size() < m) {
    for (std::size_t j = 0; j < num_labels; ++j) pool[j] = j;
    for (std::size_t i = 0; i < k; ++i)
      std::swap(pool[i], pool[i + static_cast<std::size_t>(rng.below(num_labels - i))]);
    std::vector<std::size_t> subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(subset.begin(), subset.end());
    if (seen.size() < distinct && seen.count(subset)) continue;
    seen.insert(subset);
    out.push_back(std::move(subset));
  }
  return out;
}

class RakelModel final : public MultiLabelModel {
 public:
  RakelModel(const MLDataset& train, const LearnerSpec& learner, const RakelParams& params,
             std::size_t workers = 1)
      : num_labels_(train.num_labels()) {
    const std::size_t m = params.m == 0 ? 2 * num_labels_ : params.m;
    const std::size_t k = params.k == 0 ? std::min<std::size_t>(3, num_labels_) : params.k;
    subsets_ = rakel_labelsets(num_labels_, m, k, params.seed);
    members_.resize(subsets_.size());
    parallel_for(subsets_.size(), workers, [&](std::size_t i) {
      members_[i] = std::make_shared<LabelPowersetModel>(train.restrict_labels(subsets_[i]), learner);
    });
    coverage_.assign(num_labels_, 0);
    for (const auto& s : subsets_)
      for (auto j : s) ++coverage_[j];
  }

  std::size_t num_labels() const override { return num_labels_; }

  std::vector<double> predict_scores(const FeatureVector& x) const override {
    std::vector<double> sum(num_labels_, 0.0);
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const auto s = members_[i]->predict_scores(x);
      for (std::size_t k = 0; k < s.size(); ++k) sum[subsets_[i][k]] += s[k];
    }
    for (std::size_t j = 0; j < num_labels_; ++j)
      sum[j] = coverage_[j] ? sum[j] / static_cast<double>(coverage_[j]) : 0.5;
    return sum;
  }

  std::vector<std::size_t> uncovered_labels() const override {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < num_labels_; ++j)
      if (coverage_[j] == 0) out.push_back(j);
    return out;
  }

  const std::vector<std::vector<std::size_t>>& subsets() const noexcept { return subsets_; }

 private:
  std::size_t num_labels_;
  std::vector<std::vector<std::size_t>> subsets_;
  std::vector<std::shared_ptr<const LabelPowersetModel>> members_;
  std::vector<std::size_t> coverage_;
};

struct PruneSpec {
  std::size_t p = 2;  // labelsets seen fewer than p times are pruned
  std::size_t b = 2;  // at most b reintroduced copies per pruned row

  bool operator==(const PruneSpec&) const = default;
};

// The pruned-sets rewrite of a training set. Rows whose labelset occurs fewer
// than p times are replaced, in place, by up to b copies relabelled with the
// frequent nonempty proper subsets of their labelset (largest first, then
// ascending bit pattern).
inline MLDataset ps_rewrite(const MLDataset& train, const PruneSpec& prune) {
  std::map<LabelSet, std::size_t> freq;
  for (const auto& y : train.labels()) ++freq[y];
  std::vector<LabelSet> frequent;
  for (const auto& [set, n] : freq)
    if (n >= prune.p && !set.empty()) frequent.push_back(set);
  std::stable_sort(frequent.begin(), frequent.end(), [](const LabelSet& a, const LabelSet& b) {
    return a.cardinality() > b.cardinality();
  });

  MLDataset out(train.schema());
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto& y = train.labels(i);
    if (freq.at(y) >= prune.p) {
      out.add(train.features(i), y);
      continue;
    }
    std::size_t added = 0;
    for (const auto& s : frequent) {
      if (added >= prune.b) break;
      if (s != y && s.is_subset_of(y)) {
        out.add(train.features(i), s);
        ++added;
      }
    }
  }
  if (out.empty())
    throw DataError("pruning with p=" + std::to_string(prune.p) + " removed every training row");
  return out;
}

inline std::shared_ptr<LabelPowersetModel> ps_fit(const MLDataset& train, const LearnerSpec& learner,
                                                  const PruneSpec& prune) {
  if (prune.p == 0) return std::make_shared<LabelPowersetModel>(train, learner);
  return std::make_shared<LabelPowersetModel>(ps_rewrite(train, prune), learner);
}

// Fixed scores regardless of input; a reference point for the benchmark harness.
class ConstantModel final : public MultiLabelModel {
 public:
  explicit ConstantModel(std::vector<double> scores) : scores_(std::move(scores)) {
    for (double s : scores_)
      if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("constant scores must lie in [0, 1]");
  }
  std::size_t num_labels() const override { return scores_.size(); }
  std::vector<double> predict_scores(const FeatureVector&) const override { return scores_; }

 private:
  std::vector<double> scores_;
};

struct BrSpec {
  bool operator==(const BrSpec&) const = default;
};
struct LpSpec {
  bool operator==(const LpSpec&) const = default;
};
struct ConstantSpec {
  std::vector<double> scores;
  bool operator==(const ConstantSpec&) const = default;
};

using TransformSpec = std::variant<BrSpec, LpSpec, RakelParams, PruneSpec, ConstantSpec>;

inline std::string transform_name(const TransformSpec& t) {
  static const char* names[] = {"br", "lp", "rakel", "ps", "constant"};
  return names[t.index()];
}

inline ModelPtr fit_transform(const TransformSpec& transform, const LearnerSpec& learner,
                              const MLDataset& train, std::size_t workers = 1) {
  if (const auto* r = std::get_if<RakelParams>(&transform))
    return std::make_shared<RakelModel>(train, learner, *r, workers);
  if (const auto* p = std::get_if<PruneSpec>(&transform)) return ps_fit(train, learner, *p);
  if (const auto* c = std::get_if<ConstantSpec>(&transform)) {
    if (c->scores.size() != train.num_labels())
      throw ConfigError("constant model has " + std::to_string(c->scores.size()) +
                        " scores for " + std::to_string(train.num_labels()) + " labels");
    return std::make_shared<ConstantModel>(c->scores);
  }
  if (std::holds_alternative<LpSpec>(transform)) return std::make_shared<LabelPowersetModel>(train, learner);
  return std::make_shared<BinaryRelevanceModel>(train, learner, workers);
}

}  // namespace mullab

#endif  // MULLAB_TRANSFORMS_HPP
