#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corrtree/trainer.hpp"

namespace corrtree {

struct BenchConfig {
  std::vector<int> ms;
  int n = 8;
  int d = 16;
  int iters = 3;
  int seeds = 5;
  std::uint64_t seed = 2026;
  TrainAlgo algo = TrainAlgo::dtree;
};

// One (width, trial) training run.
struct BenchRow {
  int m = 0;
  int seed_index = 0;
  double mean_fires = 0.0;    // total fires averaged over iterations
  double mean_visited = 0.0;  // visited tree nodes averaged over iterations
  double final_loss = 0.0;
  std::int64_t wall_ns = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;  // one per (m, seed), m-major
  // Least-squares slope of log(mean fires per iteration) against log(m).
  // Sub-linear growth shows up as a slope well below 1.
  double fires_slope = 0.0;
  double visited_slope = 0.0;
};

// "2^10..2^16" (consecutive powers of two), or comma-separated widths
// like "1024,4096,16384". Throws std::invalid_argument on anything else.
std::vector<int> parse_m_list(const std::string& text);

// Trains once per (m, seed index) pair and aggregates. Runs plain gradient
// descent on freshly generated unit-norm data; the dataset depends only on
// the seed index, so every width sees the same inputs. The CORRTREE_THREADS
// environment variable caps the worker count (default: all cores).
BenchReport run_bench(const BenchConfig& config);

double fires_slope(const BenchReport& report);

// "m,seed_index,mean_fires,mean_visited,final_loss,wall_ns" rows.
void write_bench_csv(const BenchReport& report, const std::string& path);

// Log-log scatter of mean fires per iteration against width, with the
// fitted power law drawn through it. Self-contained SVG.
void render_scaling_svg(const BenchReport& report, const std::string& path);

}  // namespace corrtree
