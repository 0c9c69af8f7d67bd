#include "corrtree/maxtree.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace corrtree {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

MaxTree::MaxTree(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("max tree needs at least one leaf");
  leaf_count_ = values.size();
  padded_ = std::bit_ceil(leaf_count_);
  depth_ = std::countr_zero(padded_);
  nodes_.assign(2 * padded_, kNegInf);
  std::copy(values.begin(), values.end(), nodes_.begin() + padded_);
  for (std::size_t i = padded_ - 1; i >= 1; --i)
    nodes_[i] = std::max(nodes_[2 * i], nodes_[2 * i + 1]);
}

double MaxTree::leaf_value(std::size_t i) const {
  if (i >= leaf_count_) throw std::out_of_range("leaf index out of range");
  return nodes_[padded_ + i];
}

std::size_t MaxTree::update_leaf(std::size_t i, double value) {
  if (i >= leaf_count_) throw std::out_of_range("leaf index out of range");
  std::size_t node = padded_ + i;
  nodes_[node] = value;
  std::size_t writes = 1;
  // Each ancestor is recomputed from both children, so a decreased leaf
  // propagates correctly.
  for (node /= 2; node >= 1; node /= 2) {
    nodes_[node] = std::max(nodes_[2 * node], nodes_[2 * node + 1]);
    ++writes;
  }
  return writes;
}

std::vector<std::size_t> MaxTree::query_above(double tau, bool strict,
                                              VisitCounter& counter,
                                              std::size_t max_results) const {
  std::vector<std::size_t> out;
  collect(1, tau, strict, counter, max_results, out);
  return out;
}

void MaxTree::collect(std::size_t node, double tau, bool strict,
                      VisitCounter& counter, std::size_t max_results,
                      std::vector<std::size_t>& out) const {
  if (out.size() >= max_results) return;
  ++counter.nodes_visited;
  const double v = nodes_[node];
  if (strict ? !(v > tau) : !(v >= tau)) return;
  if (node >= padded_) {
    // Padding leaves hold -inf and can only pass a -inf non-strict
    // threshold; they are never real indices, so drop them here.
    const std::size_t idx = node - padded_;
    if (idx < leaf_count_) out.push_back(idx);
    return;
  }
  collect(2 * node, tau, strict, counter, max_results, out);
  collect(2 * node + 1, tau, strict, counter, max_results, out);
}

bool MaxTree::check_heap_property() const {
  for (std::size_t i = 1; i < padded_; ++i)
    if (nodes_[i] != std::max(nodes_[2 * i], nodes_[2 * i + 1])) return false;
  for (std::size_t i = leaf_count_; i < padded_; ++i)
    if (nodes_[padded_ + i] != kNegInf) return false;
  return true;
}

}  // namespace corrtree
