#pragma once

#include <vector>

namespace corrtree {

// The firing pattern of one iteration, stored from both directions:
// per_data[i] lists the neurons active on point i and per_neuron[r] lists
// the points neuron r is active on. Both sides keep indices ascending.
struct FireSets {
  std::vector<std::vector<int>> per_data;    // n entries of neuron indices
  std::vector<std::vector<int>> per_neuron;  // m entries of point indices

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& s : per_data) t += s.size();
    return t;
  }

  // True iff the two views describe the same relation and all lists are
  // sorted ascending.
  bool check_duality() const;

  // Builds the neuron-side view by transposing the data-side one.
  static FireSets from_per_data(std::vector<std::vector<int>> per_data, int m);
};

}  // namespace corrtree
