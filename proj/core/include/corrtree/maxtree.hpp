#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace corrtree {

// Shared across threshold queries so a caller can account for the total
// number of tree nodes touched by a batch of searches.
struct VisitCounter {
  std::int64_t nodes_visited = 0;
};

// Tournament tree over a fixed-length array of doubles. The leaf count is
// padded up to a power of two with -inf sentinels, so every internal node
// has exactly two children and holds the max of its subtree. Point updates
// rewrite the leaf's root path; threshold queries descend only into
// subtrees whose max clears the threshold.
class MaxTree {
 public:
  // Throws std::invalid_argument on an empty input.
  explicit MaxTree(std::span<const double> values);

  std::size_t size() const { return leaf_count_; }
  // Number of levels below the root; the root path of any leaf touches
  // depth()+1 nodes.
  int depth() const { return depth_; }

  double root_max() const { return nodes_[1]; }
  double leaf_value(std::size_t i) const;

  // Recomputes each ancestor as the max of its two children, so the stored
  // max can move down as well as up. Returns the number of node writes,
  // which is always depth()+1. Throws std::out_of_range on a bad index.
  std::size_t update_leaf(std::size_t i, double value);

  // Indices (ascending) of leaves with value > tau (strict) or >= tau.
  // Stops descending as soon as max_results indices are collected; the
  // overflow check happens before the next node is examined, so a capped
  // query never visits more nodes than an uncapped one. Every node
  // examined, including pruned ones, increments counter.nodes_visited.
  std::vector<std::size_t> query_above(
      double tau, bool strict, VisitCounter& counter,
      std::size_t max_results = static_cast<std::size_t>(-1)) const;

  // True iff every internal node equals the max of its children and every
  // padding leaf is still -inf. For tests.
  bool check_heap_property() const;

 private:
  void collect(std::size_t node, double tau, bool strict,
               VisitCounter& counter, std::size_t max_results,
               std::vector<std::size_t>& out) const;

  std::size_t leaf_count_ = 0;
  std::size_t padded_ = 0;
  int depth_ = 0;
  // 1-based heap layout: root at 1, children of i at 2i and 2i+1, leaf j at
  // padded_ + j. Slot 0 is unused.
  std::vector<double> nodes_;
};

}  // namespace corrtree
