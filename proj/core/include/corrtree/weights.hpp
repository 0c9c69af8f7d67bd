#pragma once

#include <span>
#include <vector>

#include "corrtree/rng.hpp"

namespace corrtree {

// m weight vectors in d dimensions and one fixed ±1 output sign per vector.
struct WeightBank {
  int m = 0;
  int d = 0;
  std::vector<double> weights;  // m*d, row-major
  std::vector<double> signs;    // m entries, each +1.0 or -1.0

  std::span<const double> w(int r) const {
    return {weights.data() + static_cast<std::size_t>(r) * d,
            static_cast<std::size_t>(d)};
  }
  std::span<double> w_mut(int r) {
    return {weights.data() + static_cast<std::size_t>(r) * d,
            static_cast<std::size_t>(d)};
  }
};

// Standard-normal weight coordinates drawn row-major, then the m signs.
// The draw order is part of the reproducibility contract.
WeightBank gaussian_init(int m, int d, RngSpec rng);

}  // namespace corrtree
