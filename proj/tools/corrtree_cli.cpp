#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "corrtree/dataset.hpp"
#include "corrtree/network.hpp"
#include "corrtree/sparsity.hpp"
#include "corrtree/trainer.hpp"
#include "scaling.hpp"
#include "verify.hpp"

namespace {

// Exit codes: 0 success, 1 usage or input errors, 2 training divergence,
// 3 verification mismatch.
constexpr int kExitError = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitVerifyFailed = 3;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int run_gen(int n, int d, std::uint64_t seed, bool unit_norm,
            const std::string& out) {
  const corrtree::DataSet ds =
      corrtree::random_dataset(n, d, corrtree::RngSpec{seed}, unit_norm);
  if (ends_with(out, ".csv"))
    corrtree::save_dataset_csv(ds, out);
  else
    corrtree::save_dataset(ds, out);
  std::printf("wrote %s: n=%d d=%d unit_norm=%d\n", out.c_str(), ds.n, ds.d,
              ds.unit_norm ? 1 : 0);
  return 0;
}

int run_train(const std::string& data_path, int m, const std::string& algo,
              double eta, int iters, std::uint64_t seed,
              std::optional<double> b, const std::string& metrics_path) {
  const corrtree::DataSet ds = ends_with(data_path, ".csv")
                                   ? corrtree::load_dataset_csv(data_path)
                                   : corrtree::load_dataset(data_path);
  corrtree::TrainConfig cfg;
  cfg.eta = eta;
  cfg.iters = iters;
  cfg.rng = corrtree::RngSpec{seed};
  cfg.algo = corrtree::parse_algo(algo);
  cfg.b = b;

  const corrtree::TrainResult result = corrtree::train(ds, m, cfg);
  if (!metrics_path.empty())
    corrtree::write_metrics_csv(result.metrics, metrics_path);

  std::int64_t total_fires = 0;
  for (const auto& rec : result.metrics) total_fires += rec.total_fires;
  const double final_loss =
      result.metrics.empty() ? 0.0 : result.metrics.back().loss;
  std::printf("algo=%s m=%d b=%.17g iterations=%zu\n",
              corrtree::to_string(cfg.algo).c_str(), m,
              cfg.b ? *cfg.b : corrtree::select_b(m), result.metrics.size());
  std::printf("final_loss=%.17g\n", final_loss);
  std::printf("total_fires=%lld\n", static_cast<long long>(total_fires));
  std::printf("weights_checksum=%016llx\n",
              static_cast<unsigned long long>(
                  corrtree::weights_checksum(result.weights)));
  if (result.diverged_at) {
    std::fprintf(stderr, "training diverged at iteration %d\n",
                 *result.diverged_at);
    return kExitDiverged;
  }
  return 0;
}

int run_verify(std::uint64_t seed, int cases, bool inject_fault) {
  corrtree::VerifyOptions opt;
  opt.seed = seed;
  opt.cases = cases;
  opt.inject_fault = inject_fault;
  const auto results = corrtree::run_verification(opt);
  for (const auto& r : results)
    std::printf("%s\n", corrtree::format_suite_line(r).c_str());
  return corrtree::all_passed(results) ? 0 : kExitVerifyFailed;
}

int run_bench(const std::string& m_list, int n, int d, int iters, int seeds,
              std::uint64_t seed, const std::string& algo,
              const std::string& out_csv, const std::string& out_svg) {
  corrtree::BenchConfig cfg;
  cfg.ms = corrtree::parse_m_list(m_list);
  cfg.n = n;
  cfg.d = d;
  cfg.iters = iters;
  cfg.seeds = seeds;
  cfg.seed = seed;
  cfg.algo = corrtree::parse_algo(algo);

  const corrtree::BenchReport report = corrtree::run_bench(cfg);
  std::printf("widths:");
  for (int m : cfg.ms) std::printf(" %d", m);
  std::printf("\n");
  for (int m : cfg.ms) {
    double fires = 0.0, visited = 0.0;
    int count = 0;
    for (const auto& row : report.rows) {
      if (row.m != m) continue;
      fires += row.mean_fires;
      visited += row.mean_visited;
      ++count;
    }
    std::printf("m=%d mean_fires=%.3f mean_visited=%.3f\n", m, fires / count,
                visited / count);
  }
  if (cfg.ms.size() >= 2) {
    std::printf("fires_slope=%.6f\n", report.fires_slope);
    std::printf("visited_slope=%.6f\n", report.visited_slope);
  } else {
    std::printf("slope: n/a (need at least two widths)\n");
  }
  if (!out_csv.empty()) corrtree::write_bench_csv(report, out_csv);
  if (!out_svg.empty()) corrtree::render_scaling_svg(report, out_svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlation-tree training toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random dataset");
  int gen_n = 16, gen_d = 8;
  std::uint64_t gen_seed = 2026;
  bool gen_unit = false;
  std::string gen_out;
  gen->add_option("--n", gen_n, "number of points")->check(CLI::PositiveNumber);
  gen->add_option("--d", gen_d, "dimension")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_flag("--unit-norm", gen_unit, "normalize rows to unit length");
  gen->add_option("--out", gen_out, "output path (.csv or binary)")->required();

  // train
  auto* train = app.add_subcommand("train", "train a two-layer network");
  std::string train_data, train_algo = "dtree", train_metrics;
  int train_m = 1024, train_iters = 100;
  double train_eta = 0.5;
  std::uint64_t train_seed = 2026;
  double train_b_value = 0.0;
  train->add_option("--data", train_data, "dataset path")->required();
  train->add_option("--m", train_m, "network width")->check(CLI::PositiveNumber);
  train->add_option("--algo", train_algo, "dense | dtree | wtree");
  train->add_option("--eta", train_eta, "step size");
  train->add_option("--iters", train_iters, "iterations")
      ->check(CLI::NonNegativeNumber);
  train->add_option("--seed", train_seed, "rng seed");
  auto* b_opt = train->add_option("--b", train_b_value,
                                  "activation shift (default: from width)");
  train->add_option("--metrics", train_metrics, "write per-iteration csv here");

  // verify
  auto* verify = app.add_subcommand("verify", "randomized oracle cross-checks");
  std::uint64_t verify_seed = 2026;
  int verify_cases = 200;
  bool verify_fault = false;
  verify->add_option("--seed", verify_seed, "rng seed");
  verify->add_option("--cases", verify_cases, "cases per suite")
      ->check(CLI::NonNegativeNumber);
  verify->add_flag("--inject-fault", verify_fault,
                   "corrupt one expected answer; the run must then fail");

  // bench
  auto* bench = app.add_subcommand("bench", "width scaling measurement");
  std::string bench_ms = "2^10..2^16", bench_algo = "dtree";
  std::string bench_csv, bench_svg;
  int bench_n = 8, bench_d = 16, bench_iters = 3, bench_seeds = 5;
  std::uint64_t bench_seed = 2026;
  bench->add_option("--m-list", bench_ms, "widths, e.g. 2^10..2^16 or 64,256");
  bench->add_option("--n", bench_n, "points")->check(CLI::PositiveNumber);
  bench->add_option("--d", bench_d, "dimension")->check(CLI::PositiveNumber);
  bench->add_option("--iters", bench_iters, "iterations per run")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seeds", bench_seeds, "trials per width")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "rng seed");
  bench->add_option("--algo", bench_algo, "dense | dtree | wtree");
  bench->add_option("--out", bench_csv, "write per-run csv here");
  bench->add_option("--svg", bench_svg, "write scaling plot here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (gen->parsed()) return run_gen(gen_n, gen_d, gen_seed, gen_unit, gen_out);
    if (train->parsed()) {
      std::optional<double> b;
      if (b_opt->count() > 0) b = train_b_value;
      return run_train(train_data, train_m, train_algo, train_eta, train_iters,
                       train_seed, b, train_metrics);
    }
    if (verify->parsed()) return run_verify(verify_seed, verify_cases, verify_fault);
    if (bench->parsed())
      return run_bench(bench_ms, bench_n, bench_d, bench_iters, bench_seeds,
                       bench_seed, bench_algo, bench_csv, bench_svg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
