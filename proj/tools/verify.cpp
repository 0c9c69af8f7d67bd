#include "verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "corrtree/ddfn.hpp"
#include "corrtree/dtree.hpp"
#include "corrtree/maxtree.hpp"
#include "corrtree/network.hpp"
#include "corrtree/numeric.hpp"
#include "corrtree/rng.hpp"
#include "corrtree/sparsity.hpp"
#include "corrtree/trainer.hpp"
#include "corrtree/wtree.hpp"

namespace corrtree {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int ceil_log2(std::size_t x) {
  return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1));
}

// Worst-case nodes examined by one threshold query reporting k leaves on an
// L-leaf tree: the reported root paths plus the pruned frontier around them.
std::int64_t visit_bound(std::size_t k, std::size_t leaves) {
  const std::int64_t levels = ceil_log2(std::bit_ceil(leaves)) + 1;
  return 2 * static_cast<std::int64_t>(k + 1) * levels + 1;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         (a.empty() ||
          std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

template <typename T>
std::string join(const std::vector<T>& v, std::size_t cap = 16) {
  std::ostringstream ss;
  ss << '[';
  for (std::size_t i = 0; i < v.size() && i < cap; ++i) {
    if (i) ss << ',';
    ss << v[i];
  }
  if (v.size() > cap) ss << ",...";
  ss << ']';
  return ss.str();
}

struct CaseLog {
  SuiteResult* suite;
  int case_index;
  bool failed = false;

  void fail(const std::string& what) {
    if (!failed) {
      failed = true;
      ++suite->failures;
      if (suite->first_failure.empty()) {
        suite->first_failure =
            "case " + std::to_string(case_index) + ": " + what;
      }
    }
  }
  void check(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void check_bound(bool ok, const std::string& what) {
    if (!ok) {
      ++suite->bound_violations;
      fail(what);
    }
  }
};

std::vector<std::size_t> scan_above(const std::vector<double>& values,
                                    double tau, bool strict) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (strict ? values[i] > tau : values[i] >= tau) out.push_back(i);
  return out;
}

double random_leaf_value(Rng& rng) {
  double v = rng.uniform(-8.0, 8.0);
  if (rng.below(3) == 0) v = std::round(v);  // force ties
  return v;
}

double pick_threshold(Rng& rng, const std::vector<double>& values) {
  const auto roll = rng.below(20);
  if (roll == 0) return kInf;
  if (roll == 1) return -kInf;
  if (roll < 10) return values[rng.below(values.size())];
  return rng.uniform(-9.0, 9.0);
}

SuiteResult suite_maxtree(std::uint64_t seed, int cases, bool inject_fault) {
  SuiteResult suite{.name = "maxtree"};
  for (int c = 0; c < cases; ++c) {
    ++suite.cases;
    CaseLog log{&suite, c};
    Rng rng(derive_seed(seed, c));
    const std::size_t leaves = 1 + rng.below(512);
    std::vector<double> values(leaves);
    for (auto& v : values) v = random_leaf_value(rng);

    MaxTree tree(values);
    log.check(tree.check_heap_property(), "heap property broken after build");
    log.check(tree.root_max() == *std::max_element(values.begin(), values.end()),
              "root is not the max leaf");

    for (int round = 0; round < 4; ++round) {
      const double tau = pick_threshold(rng, values);
      const bool strict = rng.below(2) == 0;
      VisitCounter counter;
      auto got = tree.query_above(tau, strict, counter);
      auto expected = scan_above(values, tau, strict);
      if (inject_fault && c == 0 && round == 0) expected.push_back(leaves);
      log.check(got == expected, "query disagrees with linear scan: got " +
                                     join(got) + " want " + join(expected));
      log.check_bound(
          counter.nodes_visited <= visit_bound(expected.size(), leaves),
          "query visited " + std::to_string(counter.nodes_visited) +
              " nodes, bound " +
              std::to_string(visit_bound(expected.size(), leaves)));

      // A capped query must return a prefix of the full answer without
      // visiting more nodes than the uncapped one did.
      if (!expected.empty()) {
        const std::size_t cap = 1 + rng.below(expected.size());
        VisitCounter capped_counter;
        auto capped = tree.query_above(tau, strict, capped_counter, cap);
        const std::size_t want = std::min(cap, expected.size());
        log.check(capped.size() == want &&
                      std::equal(capped.begin(), capped.end(), expected.begin()),
                  "capped query is not a prefix of the full answer");
        log.check_bound(capped_counter.nodes_visited <= counter.nodes_visited,
                        "capped query visited more nodes than uncapped");
      }
    }

    for (int round = 0; round < 4; ++round) {
      const std::size_t idx = rng.below(leaves);
      // Half the updates decrease the leaf, which is the direction a naive
      // ancestor-max propagation gets wrong.
      const double value = rng.below(2) == 0 ? values[idx] - rng.uniform(0.0, 4.0)
                                             : random_leaf_value(rng);
      values[idx] = value;
      const std::size_t writes = tree.update_leaf(idx, value);
      log.check_bound(
          writes == static_cast<std::size_t>(tree.depth()) + 1,
          "update wrote " + std::to_string(writes) + " nodes, want depth+1");
    }
    log.check(tree.check_heap_property(), "heap property broken after updates");
    log.check(tree.root_max() == *std::max_element(values.begin(), values.end()),
              "root stale after updates");
    {
      const double tau = pick_threshold(rng, values);
      VisitCounter counter;
      log.check(tree.query_above(tau, false, counter) ==
                    scan_above(values, tau, false),
                "query disagrees with linear scan after updates");
    }
  }
  return suite;
}

DataSet random_points(int n, int d, Rng& rng, bool unit_norm) {
  DataSet ds;
  ds.n = n;
  ds.d = d;
  ds.points.resize(static_cast<std::size_t>(n) * d);
  ds.labels.assign(n, 0.0);
  for (auto& x : ds.points) x = rng.normal();
  if (unit_norm) ds = normalize_rows(ds);
  return ds;
}

WeightBank random_weights(int m, int d, Rng& rng) {
  WeightBank w;
  w.m = m;
  w.d = d;
  w.weights.resize(static_cast<std::size_t>(m) * d);
  w.signs.resize(m);
  for (auto& x : w.weights) x = rng.normal();
  for (auto& s : w.signs) s = rng.sign();
  return w;
}

std::vector<int> scan_correlations(const WeightBank& w, const DataSet& ds,
                                   int i, double tau, bool strict) {
  std::vector<int> out;
  auto x = ds.row(i);
  for (int r = 0; r < w.m; ++r) {
    const double z = dot(w.w(r), x);
    if (strict ? z > tau : z >= tau) out.push_back(r);
  }
  return out;
}

std::vector<int> scan_points(const WeightBank& w, const DataSet& ds, int r,
                             double tau, bool strict) {
  std::vector<int> out;
  auto wr = w.w(r);
  for (int i = 0; i < ds.n; ++i) {
    const double z = dot(wr, ds.row(i));
    if (strict ? z > tau : z >= tau) out.push_back(i);
  }
  return out;
}

double correlation_threshold(Rng& rng, const WeightBank& w, const DataSet& ds) {
  if (rng.below(2) == 0) {
    const int r = static_cast<int>(rng.below(w.m));
    const int i = static_cast<int>(rng.below(ds.n));
    return dot(w.w(r), ds.row(i));  // exact tie with one leaf
  }
  return rng.uniform(-3.0, 3.0);
}

SuiteResult suite_dtree(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "dtree"};
  for (int c = 0; c < cases; ++c) {
    ++suite.cases;
    CaseLog log{&suite, c};
    Rng rng(derive_seed(seed, c));
    const int n = 1 + static_cast<int>(rng.below(64));
    const int d = 1 + static_cast<int>(rng.below(16));
    const int m = 1 + static_cast<int>(rng.below(256));
    WeightBank w = random_weights(m, d, rng);
    DataSet ds = random_points(n, d, rng, rng.below(2) == 0);

    CorrelationDTree tree(w, ds);
    log.check(tree.check_leaves_exact(), "leaves wrong after build");

    for (int round = 0; round < 4; ++round) {
      if (rng.below(2) == 0) {
        const int r = static_cast<int>(rng.below(m));
        std::vector<double> z(d);
        for (auto& x : z) x = rng.normal();
        std::copy(z.begin(), z.end(), w.w_mut(r).begin());
        tree.update(r, z);
      }
      const int i = static_cast<int>(rng.below(n));
      const double tau = correlation_threshold(rng, w, ds);
      const bool strict = rng.below(2) == 0;
      VisitCounter counter;
      auto got = tree.query(i, tau, strict, counter);
      auto expected = scan_correlations(w, ds, i, tau, strict);
      log.check(got == expected, "query disagrees with direct scan: got " +
                                     join(got) + " want " + join(expected));
      log.check_bound(counter.nodes_visited <=
                          visit_bound(expected.size(), static_cast<std::size_t>(m)),
                      "query visited more nodes than the bound allows");
    }
    log.check(tree.check_leaves_exact(), "leaves stale after updates");
  }
  return suite;
}

SuiteResult suite_wtree(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "wtree"};
  for (int c = 0; c < cases; ++c) {
    ++suite.cases;
    CaseLog log{&suite, c};
    Rng rng(derive_seed(seed, c));
    const int n = 1 + static_cast<int>(rng.below(64));
    const int d = 1 + static_cast<int>(rng.below(16));
    const int m = 1 + static_cast<int>(rng.below(256));
    WeightBank w = random_weights(m, d, rng);
    DataSet ds = random_points(n, d, rng, rng.below(2) == 0);

    CorrelationWTree tree(w, ds);
    log.check(tree.check_leaves_exact(), "leaves wrong after build");

    for (int round = 0; round < 4; ++round) {
      if (rng.below(2) == 0) {
        const int r = static_cast<int>(rng.below(m));
        std::vector<double> z(d);
        for (auto& x : z) x = rng.normal();
        std::copy(z.begin(), z.end(), w.w_mut(r).begin());
        tree.update(r, z);
      }
      const int r = static_cast<int>(rng.below(m));
      const double tau = correlation_threshold(rng, w, ds);
      const bool strict = rng.below(2) == 0;
      VisitCounter counter;
      auto got = tree.query(r, tau, strict, counter);
      auto expected = scan_points(w, ds, r, tau, strict);
      log.check(got == expected, "query disagrees with direct scan: got " +
                                     join(got) + " want " + join(expected));
      log.check_bound(counter.nodes_visited <=
                          visit_bound(expected.size(), static_cast<std::size_t>(n)),
                      "query visited more nodes than the bound allows");
    }
    log.check(tree.check_leaves_exact(), "leaves stale after updates");
  }
  return suite;
}

SuiteResult suite_ddfn(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "ddfn"};
  for (int c = 0; c < cases; ++c) {
    ++suite.cases;
    CaseLog log{&suite, c};
    Rng rng(derive_seed(seed, c));
    const int n = 1 + static_cast<int>(rng.below(32));
    const int m = 1 + static_cast<int>(rng.below(64));
    const int d = 1 + static_cast<int>(rng.below(8));
    auto draw_set = [&](int count) {
      std::vector<std::vector<double>> vs(count, std::vector<double>(d));
      for (auto& v : vs)
        for (auto& x : v) x = rng.normal();
      return vs;
    };
    auto xs = draw_set(n);
    auto ys = draw_set(m);
    double b = rng.uniform(-1.0, 1.0);
    const auto extreme = rng.below(4);
    if (extreme == 0) b = -1e6;  // everything pairs up: overflow when m >= 5
    if (extreme == 1) b = 1e6;   // nothing does

    DdfnInstance instance(xs, ys, b);
    auto check_query = [&]() {
      VisitCounter counter;
      auto result = instance.query(counter);
      std::vector<std::pair<int, int>> expected;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
          if (dot(std::span<const double>(xs[i]),
                  std::span<const double>(ys[j])) >= b)
            expected.emplace_back(i, j);
      const bool should_overflow = expected.size() > instance.cap();
      log.check(result.overflow == should_overflow,
                "overflow flag wrong: " + std::to_string(expected.size()) +
                    " pairs vs cap " + std::to_string(instance.cap()));
      if (!should_overflow) {
        log.check(result.pairs == expected, "pair list disagrees with scan");
      } else {
        log.check(result.pairs.empty(), "overflow result still lists pairs");
      }
    };
    check_query();
    for (int round = 0; round < 2; ++round) {
      const int j = static_cast<int>(rng.below(m));
      for (auto& x : ys[j]) x = rng.normal();
      instance.update(j, ys[j]);
      check_query();
    }
  }
  return suite;
}

SuiteResult suite_max_ip(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "max_ip"};
  for (int c = 0; c < cases; ++c) {
    ++suite.cases;
    CaseLog log{&suite, c};
    Rng rng(derive_seed(seed, c));
    const int n = 1 + static_cast<int>(rng.below(32));
    const int m = 1 + static_cast<int>(rng.below(32));
    const int d = 1 + static_cast<int>(rng.below(8));
    const std::int64_t bound = 1 + static_cast<std::int64_t>(rng.below(10));
    auto draw_set = [&](int count) {
      std::vector<std::vector<double>> vs(count, std::vector<double>(d));
      for (auto& v : vs)
        for (auto& x : v)
          x = static_cast<double>(
              static_cast<std::int64_t>(rng.below(2 * bound + 1)) - bound);
      return vs;
    };
    const auto xs = draw_set(n);
    const auto ys = draw_set(m);

    std::int64_t expected = std::numeric_limits<std::int64_t>::min();
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        std::int64_t ip = 0;
        for (int k = 0; k < d; ++k)
          ip += static_cast<std::int64_t>(x[k]) * static_cast<std::int64_t>(y[k]);
        expected = std::max(expected, ip);
      }
    }

    int rounds = 0;
    const std::int64_t got = max_ip_via_ddfn(xs, ys, bound, &rounds);
    log.check(got == expected, "max inner product " + std::to_string(got) +
                                   " vs scan " + std::to_string(expected));
    const std::int64_t range = 2 * d * bound * bound + 1;
    log.check_bound(rounds <= ceil_log2(static_cast<std::size_t>(range)),
                    "binary search took " + std::to_string(rounds) +
                        " rounds, bound " +
                        std::to_string(ceil_log2(static_cast<std::size_t>(range))));
  }
  return suite;
}

SuiteResult suite_trainer(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "trainer"};
  constexpr double kEtas[] = {0.25, 0.5, 1.0};
  for (int c = 0; c < cases; ++c) {
    ++suite.cases;
    CaseLog log{&suite, c};
    Rng rng(derive_seed(seed, c));
    const int n = 1 + static_cast<int>(rng.below(8));
    const int d = 1 + static_cast<int>(rng.below(6));
    const int m = 2 + static_cast<int>(rng.below(31));
    DataSet ds = random_dataset(n, d, RngSpec{rng.bits()}, /*unit_norm=*/true);

    TrainConfig cfg;
    cfg.eta = kEtas[rng.below(3)];
    cfg.iters = 1 + static_cast<int>(rng.below(8));
    cfg.rng = RngSpec{rng.bits()};

    std::vector<std::vector<std::uint64_t>> checksums(3);
    TrainResult results[3];
    const TrainAlgo algos[] = {TrainAlgo::dense, TrainAlgo::dtree,
                               TrainAlgo::wtree};
    for (int a = 0; a < 3; ++a) {
      TrainConfig run = cfg;
      run.algo = algos[a];
      run.on_iteration = [&checksums, a](int, const WeightBank& w) {
        checksums[a].push_back(weights_checksum(w));
      };
      results[a] = train(ds, m, run);
    }

    for (int a = 1; a < 3; ++a) {
      const std::string who = to_string(algos[a]);
      log.check(bits_equal(results[a].weights.weights,
                           results[0].weights.weights),
                who + " final weights differ from dense");
      log.check(checksums[a] == checksums[0],
                who + " weight trajectory differs from dense");
      log.check(results[a].metrics.size() == results[0].metrics.size(),
                who + " ran a different number of iterations");
      for (std::size_t t = 0; t < results[a].metrics.size() &&
                              t < results[0].metrics.size();
           ++t) {
        const auto& x = results[a].metrics[t];
        const auto& y = results[0].metrics[t];
        log.check(x.loss == y.loss && x.err_norm == y.err_norm &&
                      x.total_fires == y.total_fires &&
                      x.max_fires == y.max_fires &&
                      x.neurons_updated == y.neurons_updated &&
                      x.max_movement == y.max_movement,
                  who + " metrics diverge at iteration " + std::to_string(t));
      }
    }

    // The dense trainer's fire sets are by construction the brute-force
    // activation pattern; spot-check the oracle agrees at initialization.
    const WeightBank w0 = gaussian_init(m, d, cfg.rng);
    const FireSets fs =
        fire_sets_bruteforce(w0, ds, select_b(m), /*strict=*/true);
    log.check(fs.check_duality(), "oracle fire sets fail duality");
    log.check(results[0].metrics.empty() ||
                  results[0].metrics[0].total_fires ==
                      static_cast<std::int64_t>(fs.total()),
              "trainer's initial fire count disagrees with the oracle");
  }
  return suite;
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  std::vector<SuiteResult> results;
  results.push_back(
      suite_maxtree(derive_seed(options.seed, 101), options.cases,
                    options.inject_fault));
  results.push_back(suite_dtree(derive_seed(options.seed, 102), options.cases));
  results.push_back(suite_wtree(derive_seed(options.seed, 103), options.cases));
  results.push_back(suite_ddfn(derive_seed(options.seed, 104), options.cases));
  results.push_back(
      suite_max_ip(derive_seed(options.seed, 105), options.cases));
  results.push_back(
      suite_trainer(derive_seed(options.seed, 106), options.cases));
  return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  for (const auto& r : results)
    if (r.failures > 0 || r.bound_violations > 0) return false;
  return true;
}

std::string format_suite_line(const SuiteResult& r) {
  std::ostringstream ss;
  if (r.failures == 0 && r.bound_violations == 0) {
    ss << "[PASS] " << r.name << " (" << r.cases << " cases, 0 bound violations)";
  } else {
    ss << "[FAIL] " << r.name << " (" << r.failures << "/" << r.cases
       << " cases failed, " << r.bound_violations << " bound violations)";
    if (!r.first_failure.empty()) ss << "\n       first: " << r.first_failure;
  }
  return ss.str();
}

}  // namespace corrtree
