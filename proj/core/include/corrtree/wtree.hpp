#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "corrtree/dataset.hpp"
#include "corrtree/maxtree.hpp"
#include "corrtree/weights.hpp"

namespace corrtree {

// The transpose of CorrelationDTree: one tournament tree per weight vector,
// each over the n inner products <w_r, x_i>. Changing weight vector r
// invalidates every leaf of tree r, so an update rebuilds that one tree;
// a query against neuron r reads tree r only.
class CorrelationWTree {
 public:
  CorrelationWTree(const WeightBank& weights, const DataSet& data);

  int m() const { return weights_.m; }
  int n() const { return data_.n; }
  int d() const { return data_.d; }
  const WeightBank& weights() const { return weights_; }

  // Replaces weight vector r and rebuilds tree r.
  void update(int r, std::span<const double> z);

  // Data points whose correlation with neuron r clears tau, ascending.
  std::vector<int> query(int r, double tau, bool strict,
                         VisitCounter& counter,
                         std::size_t max_results = static_cast<std::size_t>(
                             -1)) const;

  double correlation(int i, int r) const { return trees_[r].leaf_value(i); }

  bool check_leaves_exact() const;

 private:
  WeightBank weights_;
  DataSet data_;
  std::vector<MaxTree> trees_;  // m trees, n leaves each
};

}  // namespace corrtree
