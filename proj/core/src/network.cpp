#include "corrtree/network.hpp"

#include <cmath>
#include <stdexcept>

namespace corrtree {

double select_b(int m) {
  if (m < 2) throw std::invalid_argument("shift selection needs m >= 2");
  return std::sqrt(0.4 * std::log(static_cast<double>(m)));
}

double predict(const ModelState& model, std::span<const double> x) {
  const WeightBank& w = model.weights;
  double s = 0.0;
  for (int r = 0; r < w.m; ++r) {
    const double z = dot(w.w(r), x);
    // Skipping inactive neurons keeps the sum identical to the sparse
    // evaluation, exact zeros and all.
    if (z > model.b) s += w.signs[r] * (z - model.b);
  }
  return s / std::sqrt(static_cast<double>(w.m));
}

double loss(const ModelState& model, const DataSet& data) {
  double s = 0.0;
  for (int i = 0; i < data.n; ++i) {
    const double diff = predict(model, data.row(i)) - data.labels[i];
    s += diff * diff;
  }
  return 0.5 * s;
}

Gradient gradient(const ModelState& model, const DataSet& data,
                  const FireSets* fire_sets, bool validate_fire_sets) {
  const WeightBank& w = model.weights;
  if (w.d != data.d) throw std::invalid_argument("weight and data dimensions differ");

  FireSets computed;
  if (fire_sets == nullptr || validate_fire_sets) {
    std::vector<std::vector<int>> per_data(data.n);
    for (int i = 0; i < data.n; ++i) {
      auto x = data.row(i);
      for (int r = 0; r < w.m; ++r)
        if (dot(w.w(r), x) > model.b) per_data[i].push_back(r);
    }
    computed = FireSets::from_per_data(std::move(per_data), w.m);
    if (fire_sets != nullptr && validate_fire_sets) {
      if (fire_sets->per_data != computed.per_data ||
          fire_sets->per_neuron != computed.per_neuron)
        throw std::invalid_argument("provided fire sets disagree with the weights");
    }
  }
  const FireSets& fs = fire_sets ? *fire_sets : computed;

  std::vector<double> u(data.n);
  for (int i = 0; i < data.n; ++i)
    u[i] = forward_fired(w, data.row(i), model.b, fs.per_data[i]);

  Gradient g;
  g.m = w.m;
  g.d = w.d;
  g.cols.assign(static_cast<std::size_t>(w.m) * w.d, 0.0);
  for (int r = 0; r < w.m; ++r) {
    std::span<double> col{g.cols.data() + static_cast<std::size_t>(r) * w.d,
                          static_cast<std::size_t>(w.d)};
    gradient_column(w, data, u, r, fs.per_neuron[r], col);
  }
  return g;
}

}  // namespace corrtree
