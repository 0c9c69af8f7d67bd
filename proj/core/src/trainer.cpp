#include "corrtree/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "corrtree/dtree.hpp"
#include "corrtree/numeric.hpp"
#include "corrtree/wtree.hpp"

namespace corrtree {

namespace {

// Loss past this is treated as divergence and stops the run.
constexpr double kDivergenceCap = 1e12;

std::vector<std::vector<int>> transpose_sets(
    const std::vector<std::vector<int>>& sets, int width) {
  std::vector<std::vector<int>> out(width);
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (int b : sets[a]) out[b].push_back(static_cast<int>(a));
  return out;
}

TrainResult train_impl(const DataSet& data, WeightBank W,
                       const TrainConfig& cfg) {
  validate(data);
  if (data.n == 0) throw std::invalid_argument("cannot train on an empty dataset");
  if (W.d != data.d) throw std::invalid_argument("weight and data dimensions differ");
  if (cfg.iters < 0) throw std::invalid_argument("iteration count must be nonnegative");
  if (!std::isfinite(cfg.eta)) throw std::invalid_argument("step size must be finite");
  const int n = data.n;
  const int m = W.m;
  const int d = W.d;
  const double b = cfg.b ? *cfg.b : select_b(m);

  const WeightBank W0 = W;
  std::vector<double> movement(m, 0.0);

  // The three algorithms plug into the same loop through one seam: where
  // each iteration's fire sets come from. Everything downstream of the
  // sets runs the same instructions on the same values, which is what
  // makes the trajectories bitwise identical.
  std::optional<CorrelationDTree> dtree;
  std::optional<CorrelationWTree> wtree;
  std::vector<std::vector<int>> neuron_sets;
  std::int64_t visited_pending = 0;
  if (cfg.algo == TrainAlgo::dtree) {
    dtree.emplace(W, data);
  } else if (cfg.algo == TrainAlgo::wtree) {
    wtree.emplace(W, data);
    neuron_sets.resize(m);
    VisitCounter counter;
    for (int r = 0; r < m; ++r)
      neuron_sets[r] = wtree->query(r, b, /*strict=*/true, counter);
    visited_pending = counter.nodes_visited;
  }

  TrainResult result;
  FireSets prev_fs;

  std::vector<double> u(n);
  std::vector<double> gcol(d);

  for (int t = 0; t < cfg.iters; ++t) {
    const auto tick = std::chrono::steady_clock::now();

    FireSets fs;
    fs.per_data.resize(n);
    std::int64_t visited_now = 0;
    switch (cfg.algo) {
      case TrainAlgo::dense:
        for (int i = 0; i < n; ++i) {
          auto x = data.row(i);
          for (int r = 0; r < m; ++r)
            if (dot(W.w(r), x) > b) fs.per_data[i].push_back(r);
        }
        visited_now = static_cast<std::int64_t>(n) * m;
        fs.per_neuron = transpose_sets(fs.per_data, m);
        break;
      case TrainAlgo::dtree: {
        VisitCounter counter;
        for (int i = 0; i < n; ++i)
          fs.per_data[i] = dtree->query(i, b, /*strict=*/true, counter);
        visited_now = counter.nodes_visited;
        fs.per_neuron = transpose_sets(fs.per_data, m);
        break;
      }
      case TrainAlgo::wtree:
        // The maintained per-neuron sets already describe W(t); the node
        // visits that produced them were accumulated when they were
        // (re)queried, so charge them to the iteration that consumes them.
        fs.per_neuron = neuron_sets;
        fs.per_data = transpose_sets(fs.per_neuron, n);
        visited_now = visited_pending;
        visited_pending = 0;
        break;
    }

    if (cfg.track_flips) {
      if (t == 0) {
        result.flips.noflip.assign(n, {});
        for (int i = 0; i < n; ++i) {
          result.flips.noflip[i].resize(m);
          for (int r = 0; r < m; ++r) result.flips.noflip[i][r] = r;
        }
      } else {
        record_flips(result.flips, prev_fs, fs);
      }
    }

    const auto& per_data = fs.per_data;
    const auto& per_neuron = fs.per_neuron;

    for (int i = 0; i < n; ++i)
      u[i] = forward_fired(W, data.row(i), b, per_data[i]);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double diff = u[i] - data.labels[i];
      s += diff * diff;
    }

    IterationRecord rec;
    rec.iter = t;
    rec.loss = 0.5 * s;
    rec.err_norm = std::sqrt(s);
    for (int i = 0; i < n; ++i) {
      const auto sz = static_cast<std::int64_t>(per_data[i].size());
      rec.total_fires += sz;
      rec.max_fires = std::max(rec.max_fires, sz);
    }
    rec.visited_nodes = visited_now;
    rec.max_movement = *std::max_element(movement.begin(), movement.end());

    if (!std::isfinite(rec.loss) || rec.loss > kDivergenceCap) {
      rec.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - tick)
                        .count();
      result.metrics.push_back(rec);
      result.diverged_at = t;
      break;
    }

    std::vector<int> updated;
    for (int r = 0; r < m; ++r)
      if (!per_neuron[r].empty()) updated.push_back(r);

    for (int r : updated) {
      gradient_column(W, data, u, r, per_neuron[r], gcol);
      auto wr = W.w_mut(r);
      for (int k = 0; k < d; ++k) wr[k] -= cfg.eta * gcol[k];
    }

    for (int r : updated) {
      double ss = 0.0;
      auto wr = W.w(r);
      auto wr0 = W0.w(r);
      for (int k = 0; k < d; ++k) {
        const double diff = wr[k] - wr0[k];
        ss += diff * diff;
      }
      movement[r] = std::sqrt(ss);
    }

    rec.neurons_updated = static_cast<int>(updated.size());
    rec.max_movement = *std::max_element(movement.begin(), movement.end());

    if (dtree) {
      for (int r : updated) dtree->update(r, W.w(r));
    } else if (wtree) {
      VisitCounter counter;
      for (int r : updated) {
        wtree->update(r, W.w(r));
        neuron_sets[r] = wtree->query(r, b, /*strict=*/true, counter);
      }
      visited_pending += counter.nodes_visited;
    }

    rec.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now() - tick)
                      .count();
    result.metrics.push_back(rec);
    prev_fs = std::move(fs);
    if (cfg.on_iteration) cfg.on_iteration(t, W);
  }

  result.weights = std::move(W);
  return result;
}

}  // namespace

void record_flips(FlipLog& log, const FireSets& prev, const FireSets& now) {
  const std::size_t n = prev.per_data.size();
  const std::size_t m = prev.per_neuron.size();
  if (now.per_data.size() != n || now.per_neuron.size() != m)
    throw std::invalid_argument("fire-set snapshots have different shapes");
  if (log.noflip.size() != n) {
    log.noflip.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      log.noflip[i].resize(m);
      for (std::size_t r = 0; r < m; ++r)
        log.noflip[i][r] = static_cast<int>(r);
    }
  }
  std::vector<std::vector<int>> flips(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::set_symmetric_difference(
        prev.per_data[i].begin(), prev.per_data[i].end(),
        now.per_data[i].begin(), now.per_data[i].end(),
        std::back_inserter(flips[i]));
    std::vector<int> kept;
    std::set_difference(log.noflip[i].begin(), log.noflip[i].end(),
                        flips[i].begin(), flips[i].end(),
                        std::back_inserter(kept));
    log.noflip[i] = std::move(kept);
  }
  log.flip_sets.push_back(std::move(flips));
}

std::string to_string(TrainAlgo algo) {
  switch (algo) {
    case TrainAlgo::dense: return "dense";
    case TrainAlgo::dtree: return "dtree";
    case TrainAlgo::wtree: return "wtree";
  }
  return "unknown";
}

TrainAlgo parse_algo(const std::string& name) {
  if (name == "dense") return TrainAlgo::dense;
  if (name == "dtree") return TrainAlgo::dtree;
  if (name == "wtree") return TrainAlgo::wtree;
  throw std::invalid_argument("unknown training algorithm: " + name);
}

TrainResult train(const DataSet& data, int m, const TrainConfig& config) {
  if (m <= 0) throw std::invalid_argument("width must be positive");
  return train_impl(data, gaussian_init(m, data.d, config.rng), config);
}

TrainResult train_from(const DataSet& data, const WeightBank& init,
                       const TrainConfig& config) {
  if (init.m <= 0 || init.d <= 0)
    throw std::invalid_argument("initial weights are empty");
  return train_impl(data, init, config);
}

void write_metrics_csv(const std::vector<IterationRecord>& metrics,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "iter,loss,err_norm,total_fires,visited_nodes,neurons_updated,"
         "max_movement,wall_ns\n";
  char buf[128];
  for (const auto& r : metrics) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%lld,%lld,%d,%.17g,%lld\n",
                  r.iter, r.loss, r.err_norm,
                  static_cast<long long>(r.total_fires),
                  static_cast<long long>(r.visited_nodes), r.neurons_updated,
                  r.max_movement, static_cast<long long>(r.wall_ns));
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::uint64_t weights_checksum(const WeightBank& w) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](const std::vector<double>& v) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(v.data());
    const std::size_t len = v.size() * sizeof(double);
    for (std::size_t k = 0; k < len; ++k) {
      h ^= bytes[k];
      h *= 0x100000001b3ull;
    }
  };
  mix(w.weights);
  mix(w.signs);
  return h;
}

}  // namespace corrtree
