#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace corrtree {

// Every inner product in the library goes through this one kernel so that
// all code paths accumulate coordinates in the same ascending order. The
// tree-based trainers are bit-comparable with the dense baseline only
// because of this.
inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace corrtree
