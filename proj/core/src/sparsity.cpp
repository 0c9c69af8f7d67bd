#include "corrtree/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "corrtree/network.hpp"
#include "corrtree/numeric.hpp"

namespace corrtree {

double gaussian_upper_tail(double b) {
  return 0.5 * std::erfc(b / std::sqrt(2.0));
}

FireSets fire_sets_bruteforce(const WeightBank& w, const DataSet& data,
                              double b, bool strict) {
  if (w.d != data.d) throw std::invalid_argument("weight and data dimensions differ");
  std::vector<std::vector<int>> per_data(data.n);
  for (int i = 0; i < data.n; ++i) {
    auto x = data.row(i);
    for (int r = 0; r < w.m; ++r) {
      const double z = dot(w.w(r), x);
      if (strict ? z > b : z >= b) per_data[i].push_back(r);
    }
  }
  return FireSets::from_per_data(std::move(per_data), w.m);
}

SparsityReport measure_init_sparsity(const DataSet& data, int m, int trials,
                                     RngSpec rng) {
  if (!data.unit_norm)
    throw std::invalid_argument("sparsity measurement needs unit-norm data");
  if (m < 2 || trials <= 0) throw std::invalid_argument("need m >= 2 and trials >= 1");
  validate(data);

  SparsityReport report;
  report.m = m;
  report.d = data.d;
  report.n = data.n;
  report.trials = trials;
  report.b = select_b(m);
  report.base_seed = rng.seed;
  report.predicted_tail = gaussian_upper_tail(report.b);
  {
    const double c = std::pow(static_cast<double>(m), 0.8);
    const double r = std::round(c);
    report.bound = (std::abs(c - r) < 1e-9) ? r : std::ceil(c);
  }

  report.fire_counts.reserve(static_cast<std::size_t>(trials) * data.n);
  double fraction_sum = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const WeightBank w =
        gaussian_init(m, data.d, RngSpec{derive_seed(rng.seed, trial + 1)});
    const FireSets fs = fire_sets_bruteforce(w, data, report.b, /*strict=*/true);
    for (int i = 0; i < data.n; ++i) {
      const auto count = static_cast<std::int64_t>(fs.per_data[i].size());
      report.fire_counts.push_back(count);
      report.max_fire_count = std::max(report.max_fire_count, count);
      fraction_sum += static_cast<double>(count) / m;
    }
  }
  report.mean_fire_fraction =
      fraction_sum / (static_cast<double>(trials) * data.n);
  return report;
}

SparsityReport measure_init_sparsity(int m, int d, int n, int trials,
                                     RngSpec rng) {
  const DataSet data =
      random_dataset(n, d, RngSpec{derive_seed(rng.seed, 0)}, /*unit_norm=*/true);
  return measure_init_sparsity(data, m, trials, rng);
}

void write_sparsity_csv(const SparsityReport& report,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "trial,point,fire_count\n";
  for (std::size_t k = 0; k < report.fire_counts.size(); ++k) {
    const auto trial = static_cast<int>(k / report.n);
    const auto point = static_cast<int>(k % report.n);
    out << trial << ',' << point << ','
        << static_cast<long long>(report.fire_counts[k]) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string sparsity_summary(const SparsityReport& report) {
  char buf[512];
  std::snprintf(
      buf, sizeof(buf),
      "m=%d d=%d n=%d trials=%d b=%.6f seed=%llu\n"
      "mean fire fraction %.6f vs predicted tail %.6f (ratio %.4f)\n"
      "max fire count %lld vs ceil(m^0.8) = %.0f (ratio %.4f)",
      report.m, report.d, report.n, report.trials, report.b,
      static_cast<unsigned long long>(report.base_seed),
      report.mean_fire_fraction, report.predicted_tail,
      report.predicted_tail > 0.0
          ? report.mean_fire_fraction / report.predicted_tail
          : 0.0,
      static_cast<long long>(report.max_fire_count), report.bound,
      report.bound > 0.0 ? static_cast<double>(report.max_fire_count) /
                               report.bound
                         : 0.0);
  return std::string(buf);
}

}  // namespace corrtree
