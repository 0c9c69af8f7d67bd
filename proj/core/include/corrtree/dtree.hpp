#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "corrtree/dataset.hpp"
#include "corrtree/maxtree.hpp"
#include "corrtree/weights.hpp"

namespace corrtree {

// One tournament tree per data point, each over the m inner products
// <w_r, x_i>. Changing one weight vector touches one leaf per tree, so an
// update costs n inner products plus n root paths; a query against point i
// reads tree i only.
class CorrelationDTree {
 public:
  // Copies both operands. Throws std::invalid_argument on d mismatch or
  // empty inputs.
  CorrelationDTree(const WeightBank& weights, const DataSet& data);

  int m() const { return weights_.m; }
  int n() const { return data_.n; }
  int d() const { return data_.d; }
  const WeightBank& weights() const { return weights_; }

  // Replaces weight vector r and refreshes leaf r in every tree.
  // Throws on a bad index or wrong dimension.
  void update(int r, std::span<const double> z);

  // Neurons whose correlation with point i clears tau, ascending.
  std::vector<int> query(int i, double tau, bool strict,
                         VisitCounter& counter,
                         std::size_t max_results = static_cast<std::size_t>(
                             -1)) const;

  double correlation(int i, int r) const { return trees_[i].leaf_value(r); }

  // Recomputes every leaf from scratch and compares. For tests.
  bool check_leaves_exact() const;

 private:
  WeightBank weights_;
  DataSet data_;
  std::vector<MaxTree> trees_;  // n trees, m leaves each
};

}  // namespace corrtree
