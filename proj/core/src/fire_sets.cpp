#include "corrtree/fire_sets.hpp"

#include <algorithm>

namespace corrtree {

bool FireSets::check_duality() const {
  const int n = static_cast<int>(per_data.size());
  const int m = static_cast<int>(per_neuron.size());
  auto sorted_in_range = [](const std::vector<int>& s, int limit) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] < 0 || s[k] >= limit) return false;
      if (k > 0 && s[k - 1] >= s[k]) return false;
    }
    return true;
  };
  for (const auto& s : per_data)
    if (!sorted_in_range(s, m)) return false;
  for (const auto& s : per_neuron)
    if (!sorted_in_range(s, n)) return false;
  std::size_t cross = 0;
  for (int i = 0; i < n; ++i) {
    for (int r : per_data[i]) {
      if (!std::binary_search(per_neuron[r].begin(), per_neuron[r].end(), i))
        return false;
      ++cross;
    }
  }
  std::size_t neuron_total = 0;
  for (const auto& s : per_neuron) neuron_total += s.size();
  return cross == neuron_total;
}

FireSets FireSets::from_per_data(std::vector<std::vector<int>> per_data,
                                 int m) {
  FireSets fs;
  fs.per_neuron.assign(m, {});
  for (std::size_t i = 0; i < per_data.size(); ++i)
    for (int r : per_data[i]) fs.per_neuron[r].push_back(static_cast<int>(i));
  fs.per_data = std::move(per_data);
  return fs;
}

}  // namespace corrtree
