#include "corrtree/wtree.hpp"

#include <algorithm>
#include <stdexcept>

#include "corrtree/numeric.hpp"

namespace corrtree {

CorrelationWTree::CorrelationWTree(const WeightBank& weights,
                                   const DataSet& data)
    : weights_(weights), data_(data) {
  if (weights_.d != data_.d)
    throw std::invalid_argument("weight and data dimensions differ");
  if (weights_.m <= 0 || data_.n <= 0)
    throw std::invalid_argument("need at least one weight vector and one data point");
  trees_.reserve(weights_.m);
  std::vector<double> corr(data_.n);
  for (int r = 0; r < weights_.m; ++r) {
    auto w = weights_.w(r);
    for (int i = 0; i < data_.n; ++i) corr[i] = dot(w, data_.row(i));
    trees_.emplace_back(corr);
  }
}

void CorrelationWTree::update(int r, std::span<const double> z) {
  if (r < 0 || r >= weights_.m) throw std::out_of_range("weight index out of range");
  if (static_cast<int>(z.size()) != weights_.d)
    throw std::invalid_argument("replacement vector has the wrong dimension");
  std::copy(z.begin(), z.end(), weights_.w_mut(r).begin());
  // Every leaf of tree r changed, so rebuild it outright.
  std::vector<double> corr(data_.n);
  for (int i = 0; i < data_.n; ++i) corr[i] = dot(z, data_.row(i));
  trees_[r] = MaxTree(corr);
}

std::vector<int> CorrelationWTree::query(int r, double tau, bool strict,
                                         VisitCounter& counter,
                                         std::size_t max_results) const {
  if (r < 0 || r >= weights_.m) throw std::out_of_range("weight index out of range");
  auto raw = trees_[r].query_above(tau, strict, counter, max_results);
  return std::vector<int>(raw.begin(), raw.end());
}

bool CorrelationWTree::check_leaves_exact() const {
  for (int r = 0; r < weights_.m; ++r) {
    auto w = weights_.w(r);
    for (int i = 0; i < data_.n; ++i)
      if (trees_[r].leaf_value(i) != dot(w, data_.row(i))) return false;
    if (!trees_[r].check_heap_property()) return false;
  }
  return true;
}

}  // namespace corrtree
