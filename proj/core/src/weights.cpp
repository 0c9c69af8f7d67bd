#include "corrtree/weights.hpp"

#include <stdexcept>

namespace corrtree {

WeightBank gaussian_init(int m, int d, RngSpec rng) {
  if (m <= 0 || d <= 0) throw std::invalid_argument("weight dimensions must be positive");
  Rng gen(rng);
  WeightBank w;
  w.m = m;
  w.d = d;
  w.weights.resize(static_cast<std::size_t>(m) * d);
  w.signs.resize(m);
  for (auto& x : w.weights) x = gen.normal();
  for (auto& s : w.signs) s = gen.sign();
  return w;
}

}  // namespace corrtree
