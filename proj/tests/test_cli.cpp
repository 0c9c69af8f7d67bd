#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "corrtree_test_cli";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the installed binary with stdout+stderr captured to a scratch file.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto capture = work_dir() / ("out" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string("\"") + CORRTREE_CLI_PATH + "\" " + args +
                          " > \"" + capture.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

std::string grep_line(const std::string& text, const std::string& needle) {
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (line.find(needle) != std::string::npos) return line;
  return {};
}

std::vector<char> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::vector<char>((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
}

std::string dataset_path() {
  static const std::string path = [] {
    const auto p = (work_dir() / "cli_ds.bin").string();
    const auto r = run_cli("gen --n 8 --d 4 --seed 5 --unit-norm --out " + p);
    REQUIRE(r.exit_code == 0);
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("gen writes identical bytes for identical arguments") {
  const auto a = work_dir() / "gen_a.bin";
  const auto b = work_dir() / "gen_b.bin";
  CHECK(run_cli("gen --n 6 --d 3 --seed 11 --unit-norm --out " + a.string())
            .exit_code == 0);
  CHECK(run_cli("gen --n 6 --d 3 --seed 11 --unit-norm --out " + b.string())
            .exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("gen rejects an empty dataset") {
  const auto p = (work_dir() / "gen_empty.bin").string();
  CHECK(run_cli("gen --n 0 --d 3 --seed 11 --out " + p).exit_code == 1);
}

TEST_CASE("train reports one checksum regardless of algorithm") {
  const std::string base =
      " --data " + dataset_path() + " --m 64 --iters 8 --eta 0.5 --seed 3";
  const auto dense = run_cli("train --algo dense" + base);
  const auto dtree = run_cli("train --algo dtree" + base);
  REQUIRE(dense.exit_code == 0);
  REQUIRE(dtree.exit_code == 0);
  const auto line_a = grep_line(dense.output, "weights_checksum=");
  const auto line_b = grep_line(dtree.output, "weights_checksum=");
  CHECK_FALSE(line_a.empty());
  CHECK(line_a == line_b);
  CHECK_FALSE(grep_line(dense.output, "final_loss=").empty());
}

TEST_CASE("train with zero step size holds the loss constant") {
  const auto metrics = (work_dir() / "eta0.csv").string();
  const auto r = run_cli("train --data " + dataset_path() +
                         " --m 32 --iters 5 --eta 0 --seed 3 --metrics " +
                         metrics);
  REQUIRE(r.exit_code == 0);
  std::ifstream in(metrics);
  std::string header, first, line, last;
  std::getline(in, header);
  std::getline(in, first);
  last = first;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  auto loss_field = [](const std::string& row) {
    const auto c1 = row.find(',');
    const auto c2 = row.find(',', c1 + 1);
    return row.substr(c1 + 1, c2 - c1 - 1);
  };
  CHECK(loss_field(first) == loss_field(last));
}

TEST_CASE("train flags divergence with its own exit code") {
  const auto r = run_cli("train --data " + dataset_path() +
                         " --m 32 --iters 50 --eta 1e6 --seed 3");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("diverged") != std::string::npos);
}

TEST_CASE("train on a missing file fails cleanly") {
  const auto r = run_cli("train --data /nonexistent/nope.bin --m 8");
  CHECK(r.exit_code == 1);
}

TEST_CASE("verify subcommand exit codes") {
  CHECK(run_cli("verify --cases 3 --seed 77").exit_code == 0);
  CHECK(run_cli("verify --cases 0").exit_code == 0);
  const auto faulty = run_cli("verify --cases 2 --inject-fault");
  CHECK(faulty.exit_code == 3);
  CHECK(faulty.output.find("[FAIL]") != std::string::npos);
}

TEST_CASE("bench writes its table") {
  const auto csv = (work_dir() / "bench.csv").string();
  const auto r = run_cli(
      "bench --m-list 16,32 --n 4 --d 4 --iters 2 --seeds 2 --out " + csv);
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(csv));
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "m,seed_index,mean_fires,mean_visited,final_loss,wall_ns");
}

TEST_CASE("unknown flags are rejected") {
  CHECK(run_cli("train --frobnicate 1").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
}
