#ifndef MULLAB_LEARNER_HPP
#define MULLAB_LEARNER_HPP

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "classifier.hpp"
#include "decision_tree.hpp"
#include "knn.hpp"
#include "naive_bayes.hpp"

namespace mullab {

using LearnerSpec = std::variant<KnnParams, NaiveBayesParams, TreeParams>;

inline std::unique_ptr<Classifier> fit(const LearnerSpec& spec, const std::vector<Attribute>& attributes,
                                       std::span<const FeatureVector> rows,
                                       std::span<const std::size_t> classes, std::size_t num_classes) {
  return std::visit(
      [&](const auto& p) -> std::unique_ptr<Classifier> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, KnnParams>)
          return std::make_unique<KnnClassifier>(p, attributes, rows, classes, num_classes);
        else if constexpr (std::is_same_v<P, NaiveBayesParams>)
          return std::make_unique<NaiveBayesClassifier>(p, attributes, rows, classes, num_classes);
        else
          return std::make_unique<DecisionTree>(p, attributes, rows, classes, num_classes);
      },
      spec);
}

// Named base-learner configurations, in the column order of the benchmark tables.
inline const std::vector<std::string>& learner_preset_names() {
  static const std::vector<std::string> names{"NB", "k-NN", "RANDOM-T", "REPTREE", "J48"};
  return names;
}

inline LearnerSpec learner_preset(const std::string& name) {
  if (name == "NB") return NaiveBayesParams{1e-6};
  if (name == "k-NN") return KnnParams{5, KnnDistance::euclidean, true};
  if (name == "RANDOM-T") {
    TreeParams t;
    t.criterion = SplitCriterion::info_gain;
    t.random_subset_size = kSqrtAttributes;
    t.min_leaf = 1;
    return t;
  }
  if (name == "REPTREE") {
    TreeParams t;
    t.criterion = SplitCriterion::info_gain;
    t.rep_pruning = true;
    t.min_leaf = 2;
    return t;
  }
  if (name == "J48") {
    TreeParams t;
    t.criterion = SplitCriterion::gain_ratio;
    t.min_leaf = 2;
    return t;
  }
  throw ConfigError("unknown learner preset '" + name + "'");
}

}  // namespace mullab

#endif  // MULLAB_LEARNER_HPP
