#ifndef MULLAB_MODEL_HPP
#define MULLAB_MODEL_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "dataset.hpp"

namespace mullab {

// A trained multi-label classifier: one relevance score in [0, 1] per label.
// Implementations are immutable and safe to query concurrently.
class MultiLabelModel {
 public:
  virtual ~MultiLabelModel() = default;

  virtual std::size_t num_labels() const = 0;
  virtual std::vector<double> predict_scores(const FeatureVector& x) const = 0;

  // Labels the model has no information about (scored with a neutral value).
  virtual std::vector<std::size_t> uncovered_labels() const { return {}; }
};

using ModelPtr = std::shared_ptr<const MultiLabelModel>;

}  // namespace mullab

#endif  // MULLAB_MODEL_HPP
