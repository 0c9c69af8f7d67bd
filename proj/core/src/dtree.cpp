#include "corrtree/dtree.hpp"

#include <algorithm>
#include <stdexcept>

#include "corrtree/numeric.hpp"

namespace corrtree {

CorrelationDTree::CorrelationDTree(const WeightBank& weights,
                                   const DataSet& data)
    : weights_(weights), data_(data) {
  if (weights_.d != data_.d)
    throw std::invalid_argument("weight and data dimensions differ");
  if (weights_.m <= 0 || data_.n <= 0)
    throw std::invalid_argument("need at least one weight vector and one data point");
  trees_.reserve(data_.n);
  std::vector<double> corr(weights_.m);
  for (int i = 0; i < data_.n; ++i) {
    auto x = data_.row(i);
    for (int r = 0; r < weights_.m; ++r) corr[r] = dot(weights_.w(r), x);
    trees_.emplace_back(corr);
  }
}

void CorrelationDTree::update(int r, std::span<const double> z) {
  if (r < 0 || r >= weights_.m) throw std::out_of_range("weight index out of range");
  if (static_cast<int>(z.size()) != weights_.d)
    throw std::invalid_argument("replacement vector has the wrong dimension");
  std::copy(z.begin(), z.end(), weights_.w_mut(r).begin());
  for (int i = 0; i < data_.n; ++i)
    trees_[i].update_leaf(static_cast<std::size_t>(r), dot(z, data_.row(i)));
}

std::vector<int> CorrelationDTree::query(int i, double tau, bool strict,
                                         VisitCounter& counter,
                                         std::size_t max_results) const {
  if (i < 0 || i >= data_.n) throw std::out_of_range("data index out of range");
  auto raw = trees_[i].query_above(tau, strict, counter, max_results);
  return std::vector<int>(raw.begin(), raw.end());
}

bool CorrelationDTree::check_leaves_exact() const {
  for (int i = 0; i < data_.n; ++i) {
    auto x = data_.row(i);
    for (int r = 0; r < weights_.m; ++r)
      if (trees_[i].leaf_value(r) != dot(weights_.w(r), x)) return false;
    if (!trees_[i].check_heap_property()) return false;
  }
  return true;
}

}  // namespace corrtree
