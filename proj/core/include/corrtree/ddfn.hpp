#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "corrtree/dtree.hpp"

namespace corrtree {

struct DdfnQueryResult {
  bool overflow = false;
  // Lexicographically sorted (i, j) with <x_i, y_j> >= b. Empty when
  // overflow is set.
  std::vector<std::pair<int, int>> pairs;
};

// Maintains two point sets X (static) and Y (updatable) and answers "which
// pairs correlate at least b" under single-vector updates to Y. Enumeration
// is capped: once more than ceil(m^0.8) * n pairs exist the query reports
// overflow instead of a listing, and stops scanning as soon as the cap is
// provably exceeded.
class DdfnInstance {
 public:
  // X has n vectors, Y has m, all of dimension d.
  DdfnInstance(const std::vector<std::vector<double>>& xs,
               const std::vector<std::vector<double>>& ys, double b);

  int n() const { return tree_.n(); }
  int m() const { return tree_.m(); }
  int d() const { return tree_.d(); }
  double b() const { return b_; }

  // ceil(m^0.8) * n, the largest pair count query() will enumerate.
  std::size_t cap() const { return cap_; }

  void update(int j, std::span<const double> z);

  // Overflow is exact: it is reported iff the true pair count exceeds
  // cap(). Visited tree nodes accumulate into counter.
  DdfnQueryResult query(VisitCounter& counter) const;

 private:
  CorrelationDTree tree_;
  double b_ = 0.0;
  std::size_t cap_ = 0;
};

// Maximum inner product max_{i,j} <x_i, y_j> for integer-valued vectors
// with |coordinate| <= entry_bound, computed by binary search over
// emptiness queries on an instance built from threshold-augmented copies:
// each x gains a trailing -1 and each y a trailing candidate threshold t,
// so <x~, y~> >= 0 iff <x, y> >= t, and retargeting t is a Y-side update.
// Throws std::invalid_argument on non-integral coordinates or a violated
// bound. If query_rounds is non-null it receives the number of emptiness
// queries issued, which is at most ceil(log2(2 * d * entry_bound^2 + 1)).
std::int64_t max_ip_via_ddfn(const std::vector<std::vector<double>>& xs,
                             const std::vector<std::vector<double>>& ys,
                             std::int64_t entry_bound,
                             int* query_rounds = nullptr);

}  // namespace corrtree
