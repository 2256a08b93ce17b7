#ifndef MULLAB_MULLAB_HPP
#define MULLAB_MULLAB_HPP

#include "arff.hpp"
#include "bench.hpp"
#include "dataset.hpp"
#include "ensemble.hpp"
#include "label_set.hpp"
#include "learner.hpp"
#include "metrics.hpp"
#include "prediction.hpp"
#include "synthetic.hpp"
#include "transforms.hpp"

#endif  // MULLAB_MULLAB_HPP
