#include "scaling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "corrtree/dataset.hpp"
#include "corrtree/rng.hpp"

namespace corrtree {

namespace {

constexpr double kBenchEta = 0.1;

int parse_power_of_two(const std::string& text) {
  if (text.size() < 3 || text[0] != '2' || text[1] != '^')
    throw std::invalid_argument("expected 2^k in width list, got '" + text + "'");
  std::size_t pos = 0;
  int k;
  try {
    k = std::stoi(text.substr(2), &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad exponent in width list: '" + text + "'");
  }
  if (pos != text.size() - 2 || k < 0 || k > 30)
    throw std::invalid_argument("bad exponent in width list: '" + text + "'");
  return 1 << k;
}

// Least-squares slope through (log m, log y) after averaging y per width.
double loglog_slope(const std::vector<BenchRow>& rows,
                    double BenchRow::*field) {
  std::map<int, std::pair<double, int>> by_m;
  for (const auto& r : rows) {
    auto& acc = by_m[r.m];
    acc.first += r.*field;
    acc.second += 1;
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto& [m, acc] : by_m) {
    const double mean = acc.first / acc.second;
    if (mean > 0.0) pts.emplace_back(std::log(m), std::log(mean));
  }
  if (pts.size() < 2) return 0.0;
  double xbar = 0.0, ybar = 0.0;
  for (const auto& [x, y] : pts) {
    xbar += x;
    ybar += y;
  }
  xbar /= pts.size();
  ybar /= pts.size();
  double num = 0.0, den = 0.0;
  for (const auto& [x, y] : pts) {
    num += (x - xbar) * (y - ybar);
    den += (x - xbar) * (x - xbar);
  }
  return den == 0.0 ? 0.0 : num / den;
}

int worker_count(std::size_t tasks) {
  int threads = 0;
  if (const char* env = std::getenv("CORRTREE_THREADS")) {
    try {
      threads = std::stoi(env);
    } catch (const std::exception&) {
      threads = 0;
    }
  }
  if (threads <= 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(threads), tasks));
}

}  // namespace

std::vector<int> parse_m_list(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty width list");
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = parse_power_of_two(text.substr(0, dots));
    const int hi = parse_power_of_two(text.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("width range is reversed");
    std::vector<int> ms;
    for (int m = lo; m <= hi; m *= 2) ms.push_back(m);
    return ms;
  }
  std::vector<int> ms;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    std::size_t pos = 0;
    long v;
    try {
      v = std::stol(field, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad width '" + field + "'");
    }
    if (pos != field.size() || v < 1 || v > (1 << 30))
      throw std::invalid_argument("bad width '" + field + "'");
    ms.push_back(static_cast<int>(v));
  }
  if (ms.empty()) throw std::invalid_argument("empty width list");
  return ms;
}

BenchReport run_bench(const BenchConfig& config) {
  if (config.ms.empty()) throw std::invalid_argument("no widths to bench");
  if (config.n <= 0 || config.d <= 0 || config.iters <= 0 || config.seeds <= 0)
    throw std::invalid_argument("bench dimensions must be positive");

  // Each trial index gets its own dataset, shared by every width, so the
  // sweep varies m and nothing else.
  std::vector<DataSet> datasets;
  datasets.reserve(config.seeds);
  for (int s = 0; s < config.seeds; ++s)
    datasets.push_back(random_dataset(
        config.n, config.d, RngSpec{derive_seed(config.seed, 0x5EED0000ull + s)},
        /*unit_norm=*/true));

  BenchReport report;
  report.config = config;
  const std::size_t tasks = config.ms.size() * config.seeds;
  report.rows.resize(tasks);

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t task = next.fetch_add(1); task < tasks;
         task = next.fetch_add(1)) {
      const int mi = static_cast<int>(task / config.seeds);
      const int s = static_cast<int>(task % config.seeds);
      const int m = config.ms[mi];

      TrainConfig cfg;
      cfg.eta = kBenchEta;
      cfg.iters = config.iters;
      cfg.algo = config.algo;
      cfg.rng =
          RngSpec{derive_seed(config.seed,
                              static_cast<std::uint64_t>(m) * 64 + s + 1)};
      const TrainResult result = train(datasets[s], m, cfg);

      BenchRow row;
      row.m = m;
      row.seed_index = s;
      double fires = 0.0, visited = 0.0;
      for (const auto& rec : result.metrics) {
        fires += static_cast<double>(rec.total_fires);
        visited += static_cast<double>(rec.visited_nodes);
        row.wall_ns += rec.wall_ns;
      }
      if (!result.metrics.empty()) {
        row.mean_fires = fires / result.metrics.size();
        row.mean_visited = visited / result.metrics.size();
        row.final_loss = result.metrics.back().loss;
      }
      report.rows[task] = row;
    }
  };

  const int threads = worker_count(tasks);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  report.fires_slope = loglog_slope(report.rows, &BenchRow::mean_fires);
  report.visited_slope = loglog_slope(report.rows, &BenchRow::mean_visited);
  return report;
}

double fires_slope(const BenchReport& report) {
  return loglog_slope(report.rows, &BenchRow::mean_fires);
}

void write_bench_csv(const BenchReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "m,seed_index,mean_fires,mean_visited,final_loss,wall_ns\n";
  char buf[160];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%lld\n", r.m,
                  r.seed_index, r.mean_fires, r.mean_visited, r.final_loss,
                  static_cast<long long>(r.wall_ns));
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void render_scaling_svg(const BenchReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  constexpr double W = 640, H = 420;
  constexpr double L = 70, R = 616, T = 40, B = 360;

  std::map<int, std::pair<double, int>> by_m;
  for (const auto& r : report.rows) {
    if (r.mean_fires > 0.0) {
      auto& acc = by_m[r.m];
      acc.first += r.mean_fires;
      acc.second += 1;
    }
  }

  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W
      << "' height='" << H << "' viewBox='0 0 " << W << ' ' << H << "'>\n"
      << "<rect width='" << W << "' height='" << H << "' fill='white'/>\n";

  if (by_m.size() < 2) {
    out << "<text x='40' y='60' font-family='monospace' font-size='14'>"
           "not enough data for a scaling plot</text>\n</svg>\n";
    return;
  }

  double xmin = std::log(by_m.begin()->first);
  double xmax = std::log(by_m.rbegin()->first);
  double ymin = 1e300, ymax = -1e300;
  for (const auto& r : report.rows) {
    if (r.mean_fires <= 0.0) continue;
    ymin = std::min(ymin, std::log(r.mean_fires));
    ymax = std::max(ymax, std::log(r.mean_fires));
  }
  if (ymax - ymin < 1e-9) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto sx = [&](double lx) { return L + (lx - xmin) / (xmax - xmin) * (R - L); };
  auto sy = [&](double ly) { return B - (ly - ymin) / (ymax - ymin) * (B - T); };

  char buf[256];

  // axes
  std::snprintf(buf, sizeof(buf),
                "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='black'/>\n",
                L, B, R, B);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='black'/>\n",
                L, T, L, B);
  out << buf;

  for (const auto& [m, acc] : by_m) {
    const double x = sx(std::log(m));
    std::snprintf(buf, sizeof(buf),
                  "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='black'/>\n",
                  x, B, x, B + 5);
    out << buf;
    std::string label;
    if ((m & (m - 1)) == 0) {
      int k = 0;
      while ((1 << k) < m) ++k;
      label = "2^" + std::to_string(k);
    } else {
      label = std::to_string(m);
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x='%.1f' y='%.1f' font-family='monospace' "
                  "font-size='11' text-anchor='middle'>%s</text>\n",
                  x, B + 18, label.c_str());
    out << buf;
  }

  for (int tick = 0; tick <= 4; ++tick) {
    const double ly = ymin + (ymax - ymin) * tick / 4.0;
    const double y = sy(ly);
    std::snprintf(buf, sizeof(buf),
                  "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' stroke='black'/>\n",
                  L - 5, y, L, y);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x='%.1f' y='%.1f' font-family='monospace' "
                  "font-size='11' text-anchor='end'>%.0f</text>\n",
                  L - 8, y + 4, std::exp(ly));
    out << buf;
  }

  // per-trial points, then per-width means
  for (const auto& r : report.rows) {
    if (r.mean_fires <= 0.0) continue;
    std::snprintf(buf, sizeof(buf),
                  "<circle cx='%.1f' cy='%.1f' r='2.5' fill='none' "
                  "stroke='gray'/>\n",
                  sx(std::log(r.m)), sy(std::log(r.mean_fires)));
    out << buf;
  }
  double mean_x = 0.0, mean_y = 0.0;
  int npts = 0;
  for (const auto& [m, acc] : by_m) {
    const double lx = std::log(m);
    const double ly = std::log(acc.first / acc.second);
    mean_x += lx;
    mean_y += ly;
    ++npts;
    std::snprintf(buf, sizeof(buf),
                  "<circle cx='%.1f' cy='%.1f' r='4' fill='black'/>\n",
                  sx(lx), sy(ly));
    out << buf;
  }
  mean_x /= npts;
  mean_y /= npts;

  // fitted power law through the mean of the means
  const double slope = report.fires_slope;
  const auto y_at = [&](double lx) { return mean_y + slope * (lx - mean_x); };
  std::snprintf(buf, sizeof(buf),
                "<line x1='%.1f' y1='%.1f' x2='%.1f' y2='%.1f' "
                "stroke='steelblue' stroke-width='1.5'/>\n",
                sx(xmin), sy(y_at(xmin)), sx(xmax), sy(y_at(xmax)));
  out << buf;

  std::snprintf(buf, sizeof(buf),
                "<text x='%.1f' y='24' font-family='monospace' font-size='14'>"
                "mean fires per iteration vs width (log-log)</text>\n",
                L);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x='%.1f' y='%.1f' font-family='monospace' "
                "font-size='12'>fitted slope %.3f</text>\n",
                L + 10, T + 16, slope);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x='%.1f' y='%.1f' font-family='monospace' font-size='12' "
                "text-anchor='middle'>width m</text>\n",
                (L + R) / 2, B + 38);
  out << buf;

  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace corrtree
