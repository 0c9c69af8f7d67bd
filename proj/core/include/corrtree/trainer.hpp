#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corrtree/dataset.hpp"
#include "corrtree/fire_sets.hpp"
#include "corrtree/network.hpp"
#include "corrtree/rng.hpp"
#include "corrtree/weights.hpp"

namespace corrtree {

enum class TrainAlgo { dense, dtree, wtree };

std::string to_string(TrainAlgo algo);
TrainAlgo parse_algo(const std::string& name);  // throws on unknown name

struct TrainConfig {
  double eta = 0.1;
  int iters = 100;
  // Shift override; defaults to select_b(m).
  std::optional<double> b;
  RngSpec rng;
  TrainAlgo algo = TrainAlgo::dense;
  bool track_flips = false;
  // Invoked after each weight update with the iteration number and the new
  // weights. Used by the equivalence harness to snapshot trajectories.
  std::function<void(int, const WeightBank&)> on_iteration;
};

// One row per iteration. `visited_nodes` counts tree nodes touched while
// producing this iteration's fire sets (for the dense path it is the n*m
// correlations scanned); `max_movement` is the largest l2 distance any
// weight vector has traveled from its initialization so far.
struct IterationRecord {
  int iter = 0;
  double loss = 0.0;
  double err_norm = 0.0;
  std::int64_t total_fires = 0;
  std::int64_t visited_nodes = 0;
  int neurons_updated = 0;
  double max_movement = 0.0;
  std::int64_t wall_ns = 0;
  // Largest single fire set this iteration; kept in memory for analysis
  // but not part of the CSV schema.
  std::int64_t max_fires = 0;
};

// Which data points changed their activation status on each neuron between
// consecutive iterations. flip_sets[t-1][i] holds the neurons whose firing
// on point i differs between iterations t-1 and t; noflip[i] is the set of
// neurons that never changed status on point i across the whole run.
struct FlipLog {
  std::vector<std::vector<std::vector<int>>> flip_sets;
  std::vector<std::vector<int>> noflip;
};

// Appends one transition to the log: per point, the symmetric difference
// between the two firing patterns, shrinking each no-flip set accordingly.
// A log with no no-flip state yet gets it initialized to every neuron
// first (nothing has flipped before the first transition). Throws
// std::invalid_argument when the two snapshots disagree in shape.
void record_flips(FlipLog& log, const FireSets& prev, const FireSets& now);

struct TrainResult {
  WeightBank weights;
  std::vector<IterationRecord> metrics;
  FlipLog flips;  // populated only when track_flips was set
  // Iteration at which the loss stopped being finite (or blew past 1e12),
  // if that happened; training halts right there.
  std::optional<int> diverged_at;
};

// Gradient descent on the first layer, starting from Gaussian weights drawn
// from config.rng. The three algorithms differ only in how they find each
// iteration's fire sets (full scan, per-point trees, or per-neuron trees
// with incrementally maintained sets); identical seeds give bitwise
// identical weight trajectories across all three.
TrainResult train(const DataSet& data, int m, const TrainConfig& config);

// Same descent from a caller-supplied starting point.
TrainResult train_from(const DataSet& data, const WeightBank& init,
                       const TrainConfig& config);

void write_metrics_csv(const std::vector<IterationRecord>& metrics,
                       const std::string& path);

// FNV-1a over the raw bytes of weights then signs. Bitwise trajectory
// equality in one number.
std::uint64_t weights_checksum(const WeightBank& w);

}  // namespace corrtree
