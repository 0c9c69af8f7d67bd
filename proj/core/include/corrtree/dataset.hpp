#pragma once

#include <span>
#include <string>
#include <vector>

#include "corrtree/rng.hpp"

namespace corrtree {

// n points in d dimensions plus one label per point. Immutable after
// construction by convention; nothing in the library mutates a DataSet it
// did not create.
struct DataSet {
  int n = 0;
  int d = 0;
  bool unit_norm = false;
  std::vector<double> points;  // n*d, row-major
  std::vector<double> labels;  // n

  std::span<const double> row(int i) const {
    return {points.data() + static_cast<std::size_t>(i) * d,
            static_cast<std::size_t>(d)};
  }
};

// Throws std::invalid_argument if n/d and the payload sizes disagree.
void validate(const DataSet& ds);

// Each row divided by its l2 norm. A zero row is a degenerate data point
// and throws. Idempotent up to 1e-12.
DataSet normalize_rows(const DataSet& ds);

// Gaussian rows (normalized when unit_norm is set) with uniform ±1 labels.
DataSet random_dataset(int n, int d, RngSpec rng, bool unit_norm);

// Binary format: magic "CTDS", u16 version = 1, u32 n, u32 d, u8 unit-norm
// flag, n*d little-endian f64 row-major, then n little-endian f64 labels.
// The round trip preserves every payload bit.
void save_dataset(const DataSet& ds, const std::string& path);
DataSet load_dataset(const std::string& path);

// CSV alternative: header "x0,...,x{d-1},y", one row per point.
void save_dataset_csv(const DataSet& ds, const std::string& path);
DataSet load_dataset_csv(const std::string& path);

}  // namespace corrtree
