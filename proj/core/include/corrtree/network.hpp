#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "corrtree/dataset.hpp"
#include "corrtree/fire_sets.hpp"
#include "corrtree/numeric.hpp"
#include "corrtree/weights.hpp"

namespace corrtree {

// Width-m two-layer network with shifted-ReLU activations: the prediction
// on x is (1/sqrt(m)) * sum_r a_r * max(<w_r, x> - b, 0), with the signs
// a_r and the shift b frozen after initialization. Only W trains.
struct ModelState {
  WeightBank weights;
  double b = 0.0;
  int iteration = 0;
};

inline double sigma_b(double z, double b) { return std::max(z - b, 0.0); }

// Shift that prunes the initial firing pattern of a width-m layer to an
// expected m^{-1/5} fraction: sqrt(0.4 * ln m), so the standard Gaussian
// upper tail at b is exp(-b^2/2) = m^{-0.2} for unit-norm data. Throws
// for m < 2 (the shift would not be a real number).
double select_b(int m);

double predict(const ModelState& model, std::span<const double> x);

// Sum over points of squared error, halved.
double loss(const ModelState& model, const DataSet& data);

// Prediction on data point x using only the listed neurons. Correct
// whenever `fired` is exactly {r : <w_r, x> > b}; the caller owns that
// guarantee. Terms accumulate in ascending neuron order, then one division
// by sqrt(m), which is what makes sparse and dense evaluation agree bitwise.
inline double forward_fired(const WeightBank& w, std::span<const double> x,
                            double b, std::span<const int> fired) {
  double s = 0.0;
  for (int r : fired) s += w.signs[r] * (dot(w.w(r), x) - b);
  return s / std::sqrt(static_cast<double>(w.m));
}

// Gradient of the loss with respect to weight vector r, written into out
// (length d). The activation derivative is taken as 1 strictly above the
// shift and 0 at or below it, so only points in fired_r contribute:
// out = (a_r / sqrt(m)) * sum_{i in fired_r} (u_i - y_i) * x_i.
// Points are consumed in ascending order.
inline void gradient_column(const WeightBank& w, const DataSet& data,
                            std::span<const double> u, int r,
                            std::span<const int> fired_r,
                            std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (int i : fired_r) {
    const double coeff = u[i] - data.labels[i];
    auto x = data.row(i);
    for (int k = 0; k < data.d; ++k) out[k] += coeff * x[k];
  }
  const double scale = w.signs[r] / std::sqrt(static_cast<double>(w.m));
  for (int k = 0; k < data.d; ++k) out[k] *= scale;
}

struct Gradient {
  int m = 0;
  int d = 0;
  std::vector<double> cols;  // m*d, row-major by neuron

  std::span<const double> col(int r) const {
    return {cols.data() + static_cast<std::size_t>(r) * d,
            static_cast<std::size_t>(d)};
  }
};

// Full-loss gradient over all m columns. When fire_sets is given it is used
// instead of recomputing activations; with validate_fire_sets set, each
// provided set is checked against the strict firing rule first and a
// mismatch throws std::invalid_argument.
Gradient gradient(const ModelState& model, const DataSet& data,
                  const FireSets* fire_sets = nullptr,
                  bool validate_fire_sets = false);

}  // namespace corrtree
