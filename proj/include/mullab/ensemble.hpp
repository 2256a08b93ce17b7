#ifndef MULLAB_ENSEMBLE_HPP
#define MULLAB_ENSEMBLE_HPP

/*
 EN-MLC: an ensemble of multi-label models, each trained on its own random
 sample of the training rows, whose per-label scores are merged by one of six
 combination rules:

   mean, weighted_mean, max, min        algebraic, applied label by label
   majority_vote                        fraction of members whose score >= t
   weighted_majority_vote               weighted fraction of such members

 Members may mix transformations and base learners. The default ensemble has
 ten pruned-sets members cycling through the five learner presets, each fit on
 67% of the rows drawn without replacement, combined by majority vote.
*/

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "learner.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "prediction.hpp"
#include "random.hpp"
#include "transforms.hpp"

namespace mullab {

enum class CombinationRule { mean, weighted_mean, max, min, majority_vote, weighted_majority_vote };

inline bool needs_weights(CombinationRule r) {
  return r == CombinationRule::weighted_mean || r == CombinationRule::weighted_majority_vote;
}

inline std::vector<double> combine(const std::vector<std::vector<double>>& member_scores,
                                   CombinationRule rule, std::span<const double> weights = {},
                                   double t = 0.5) {
  if (member_scores.empty()) throw ConfigError("combine needs at least one member");
  const std::size_t m = member_scores.front().size();
  const std::size_t q = member_scores.size();
  for (const auto& s : member_scores)
    if (s.size() != m) throw DataError("member score vectors differ in length");
  double weight_sum = 0.0;
  if (needs_weights(rule)) {
    if (weights.size() != q)
      throw ConfigError("weighted rule needs " + std::to_string(q) + " weights, got " +
                        std::to_string(weights.size()));
    for (double w : weights) {
      if (!(w >= 0.0)) throw ConfigError("weights must be >= 0");
      weight_sum += w;
    }
    if (!(weight_sum > 0.0)) throw ConfigError("weights sum to zero");
  }

  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    switch (rule) {
      case CombinationRule::mean:
        for (const auto& s : member_scores) acc += s[j];
        acc /= static_cast<double>(q);
        break;
      case CombinationRule::weighted_mean:
        for (std::size_t k = 0; k < q; ++k) acc += weights[k] * member_scores[k][j];
        acc /= weight_sum;
        break;
      case CombinationRule::max:
        acc = member_scores.front()[j];
        for (const auto& s : member_scores) acc = std::max(acc, s[j]);
        break;
      case CombinationRule::min:
        acc = member_scores.front()[j];
        for (const auto& s : member_scores) acc = std::min(acc, s[j]);
        break;
      case CombinationRule::majority_vote:
        for (const auto& s : member_scores) acc += s[j] >= t ? 1.0 : 0.0;
        acc /= static_cast<double>(q);
        break;
      case CombinationRule::weighted_majority_vote:
        for (std::size_t k = 0; k < q; ++k) acc += member_scores[k][j] >= t ? weights[k] : 0.0;
        acc /= weight_sum;
        break;
    }
    out[j] = std::clamp(acc, 0.0, 1.0);
  }
  return out;
}

struct MemberSpec {
  TransformSpec transform = PruneSpec{};
  LearnerSpec learner = NaiveBayesParams{};
  std::string learner_name;  // preset name when the learner came from a preset
};

struct EnsembleSpec {
  std::vector<MemberSpec> members;
  double sample_ratio = 0.67;
  bool with_replacement = false;
  CombinationRule rule = CombinationRule::majority_vote;
  std::vector<double> weights;  // one per member, for the weighted rules
  double threshold = 0.5;
  std::uint64_t seed = 1;
};

// q pruned-sets members (p=2, b=2) cycling through the learner presets.
inline EnsembleSpec default_ensemble_spec(std::size_t q = 10, std::uint64_t seed = 1) {
  EnsembleSpec spec;
  spec.seed = seed;
  const auto& names = learner_preset_names();
  for (std::size_t k = 0; k < q; ++k) {
    const auto& name = names[k % names.size()];
    spec.members.push_back({PruneSpec{2, 2}, learner_preset(name), name});
  }
  return spec;
}

// Row indices of each member's training sample, ascending. Sampling happens
// sequentially from one Rng(seed), member by member.
inline std::vector<std::vector<std::size_t>> ensemble_samples(std::size_t n_rows, const EnsembleSpec& spec) {
  if (spec.members.empty()) throw ConfigError("ensemble needs at least one member");
  if (!(spec.sample_ratio > 0.0 && spec.sample_ratio <= 1.0))
    throw ConfigError("sample_ratio must lie in (0, 1]");
  const auto size = static_cast<std::size_t>(std::floor(spec.sample_ratio * static_cast<double>(n_rows) + 0.5));
  if (size == 0) throw DataError("ensemble member sample is empty");
  Rng rng(spec.seed);
  std::vector<std::vector<std::size_t>> samples;
  for (std::size_t k = 0; k < spec.members.size(); ++k) {
    std::vector<std::size_t> rows;
    if (spec.with_replacement) {
      rows.resize(size);
      for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n_rows));
    } else {
      auto perm = rng.permutation(n_rows);
      rows.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(std::min(size, n_rows)));
    }
    std::sort(rows.begin(), rows.end());
    samples.push_back(std::move(rows));
  }
  return samples;
}

class EnsembleModel final : public MultiLabelModel {
 public:
  EnsembleModel(const MLDataset& train, EnsembleSpec spec, std::size_t workers = 1)
      : spec_(std::move(spec)), num_labels_(train.num_labels()) {
    if (needs_weights(spec_.rule) && spec_.weights.size() != spec_.members.size())
      throw ConfigError("weighted rule needs one weight per member");
    samples_ = ensemble_samples(train.size(), spec_);
    members_.resize(spec_.members.size());
    parallel_for(members_.size(), workers, [&](std::size_t k) {
      const auto& m = spec_.members[k];
      members_[k] = fit_transform(m.transform, m.learner, train.subset(samples_[k]));
    });
  }

  std::size_t num_labels() const override { return num_labels_; }

  std::vector<double> predict_scores(const FeatureVector& x) const override {
    return combine(member_scores(x), spec_.rule, spec_.weights, spec_.threshold);
  }

  std::vector<std::vector<double>> member_scores(const FeatureVector& x) const {
    std::vector<std::vector<double>> all;
    all.reserve(members_.size());
    for (const auto& m : members_) all.push_back(m->predict_scores(x));
    return all;
  }

  Prediction predict(const FeatureVector& x) const {
    return Prediction::from_scores(predict_scores(x), spec_.threshold);
  }

  const EnsembleSpec& spec() const noexcept { return spec_; }
  const std::vector<std::vector<std::size_t>>& samples() const noexcept { return samples_; }
  const std::vector<ModelPtr>& members() const noexcept { return members_; }

 private:
  EnsembleSpec spec_;
  std::size_t num_labels_;
  std::vector<std::vector<std::size_t>> samples_;
  std::vector<ModelPtr> members_;
};

inline std::shared_ptr<EnsembleModel> enmlc_fit(const MLDataset& train, EnsembleSpec spec,
                                                std::size_t workers = 1) {
  return std::make_shared<EnsembleModel>(train, std::move(spec), workers);
}

}  // namespace mullab

#endif  // MULLAB_ENSEMBLE_HPP
