#ifndef MULLAB_TEST_UTIL_HPP
#define MULLAB_TEST_UTIL_HPP

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "metric_oracle.hpp"
#include "mullab/mullab.hpp"

namespace mullab::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(MULLAB_TEST_DATA) + "/" + name; }

// Dataset with numeric features given row by row and labelsets given as index lists.
inline MLDataset make_dataset(const std::vector<std::vector<double>>& x,
                              const std::vector<std::vector<std::size_t>>& y, std::size_t num_labels) {
  Schema s;
  for (std::size_t a = 0; a < x.front().size(); ++a) s.attributes.push_back(Attribute::numeric("f" + std::to_string(a)));
  for (std::size_t j = 0; j < num_labels; ++j) s.label_names.push_back("l" + std::to_string(j));
  MLDataset d(s);
  for (std::size_t i = 0; i < x.size(); ++i) {
    FeatureVector fv;
    for (double v : x[i]) fv.push_back(AttributeValue::numeric(v));
    d.add(fv, LabelSet::from_indices(num_labels, y[i]));
  }
  return d;
}

inline FeatureVector numeric_row(const std::vector<double>& v) {
  FeatureVector fv;
  for (double x : v) fv.push_back(AttributeValue::numeric(x));
  return fv;
}

inline std::vector<Attribute> numeric_attributes(std::size_t d) {
  std::vector<Attribute> a;
  for (std::size_t i = 0; i < d; ++i) a.push_back(Attribute::numeric("f" + std::to_string(i)));
  return a;
}

// Golden fixture check: canonical rewrite (or "error: <what>") vs the .expected file.
struct GoldenResult {
  std::string actual;
  std::string expected;
};

inline GoldenResult run_arff_golden(const std::string& stem) {
  const std::string base = data_path("arff/" + stem);
  GoldenResult r;
  r.expected = read_file(base + ".expected");
  std::ifstream in(base + ".arff");
  try {
    r.actual = write_arff(parse_arff(in));
  } catch (const ParseError& e) {
    r.actual = std::string("error: ") + e.what() + "\n";
  }
  return r;
}

inline const std::vector<std::string>& arff_golden_stems() {
  static const std::vector<std::string> stems = {
      "01_dense_numeric", "02_nominal",   "03_sparse",
      "04_missing",       "05_comments_case", "06_quoted",
      "07_multilabel",    "08_err_unknown_kind", "09_err_arity",
      "10_err_undeclared_nominal", "11_err_sparse_index", "12_err_missing_data"};
  return stems;
}

// Largest |library - oracle| over the five metrics for one random case. An
// undefined ranking metric must make the library throw; a mismatch there is
// reported as infinity.
inline double metric_case_discrepancy(const oracle::Case& c) {
  std::vector<LabelSet> y, z;
  std::vector<Ranking> r;
  for (std::size_t i = 0; i < c.truth.size(); ++i) {
    LabelSet a(c.m), b(c.m);
    for (std::size_t j = 0; j < c.m; ++j) {
      a.set(j, c.truth[i][j]);
      b.set(j, c.pred[i][j]);
    }
    y.push_back(a);
    z.push_back(b);
    r.push_back(c.ranks[i]);
  }
  const double inf = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  auto track = [&](double lib, double ref) { worst = std::max(worst, std::abs(lib - ref)); };
  track(accuracy(y, z), oracle::accuracy(c.truth, c.pred));
  track(hamming_loss(y, z), oracle::hamming(c.truth, c.pred));
  track(one_error(y, r), oracle::one_error(c.truth, c.ranks));
  auto ranking_metric = [&](auto lib_fn, double ref) {
    try {
      const double v = lib_fn(y, r).value;
      track(v, ref < 0 ? inf : ref);
    } catch (const DataError&) {
      if (ref >= 0) worst = inf;
    }
  };
  ranking_metric([](auto& a, auto& b) { return ranking_loss(a, b); }, oracle::ranking_loss(c.truth, c.ranks));
  ranking_metric([](auto& a, auto& b) { return average_precision(a, b); },
                 oracle::average_precision(c.truth, c.ranks));
  return worst;
}

}  // namespace mullab::test

#endif
