#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corrtree/dataset.hpp"
#include "corrtree/fire_sets.hpp"
#include "corrtree/rng.hpp"
#include "corrtree/weights.hpp"

namespace corrtree {

// P(N(0,1) >= b), evaluated as erfc(b / sqrt(2)) / 2. For unit-norm x and
// standard Gaussian w, <w, x> is standard normal, so this is the expected
// fraction of a fresh layer that fires on any one point.
double gaussian_upper_tail(double b);

// Reference activation computation: every <w_r, x_i> explicitly, O(nmd).
// This is the oracle everything tree-based is checked against.
FireSets fire_sets_bruteforce(const WeightBank& w, const DataSet& data,
                              double b, bool strict);

struct SparsityReport {
  int m = 0;
  int d = 0;
  int n = 0;
  int trials = 0;
  double b = 0.0;
  std::uint64_t base_seed = 0;
  // One entry per (trial, point): how many neurons fired.
  std::vector<std::int64_t> fire_counts;
  double mean_fire_fraction = 0.0;
  std::int64_t max_fire_count = 0;
  // gaussian_upper_tail(b): the per-neuron firing probability the mean
  // fraction should track.
  double predicted_tail = 0.0;
  // ceil(m^0.8): the scale the largest per-point count is compared to.
  double bound = 0.0;
};

// Draws one unit-norm dataset from derive_seed(rng.seed, 0) and a fresh
// Gaussian layer per trial from derive_seed(rng.seed, trial + 1), counting
// strict fires at b = select_b(m).
SparsityReport measure_init_sparsity(int m, int d, int n, int trials,
                                     RngSpec rng);

// Same measurement against a fixed dataset, one fresh layer per trial.
// Throws std::invalid_argument unless the dataset is unit-norm: the tail
// prediction is meaningless otherwise.
SparsityReport measure_init_sparsity(const DataSet& data, int m, int trials,
                                     RngSpec rng);

// One row per (trial, point): "trial,point,fire_count".
void write_sparsity_csv(const SparsityReport& report, const std::string& path);

std::string sparsity_summary(const SparsityReport& report);

}  // namespace corrtree
