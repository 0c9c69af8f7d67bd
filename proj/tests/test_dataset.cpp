#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "corrtree/dataset.hpp"
#include "corrtree/numeric.hpp"
#include "doctest.h"

using namespace corrtree;

namespace {

std::string temp_path(const std::string& name) {
  static const auto dir = [] {
    auto d = std::filesystem::temp_directory_path() / "corrtree_test_ds";
    std::filesystem::create_directories(d);
    return d;
  }();
  return (dir / name).string();
}

DataSet make(int n, int d, std::vector<double> pts, std::vector<double> ys) {
  DataSet ds;
  ds.n = n;
  ds.d = d;
  ds.points = std::move(pts);
  ds.labels = std::move(ys);
  return ds;
}

}  // namespace

TEST_CASE("row normalization") {
  const DataSet ds = make(2, 2, {3, 4, 1, 0}, {1, -1});
  const DataSet unit = normalize_rows(ds);
  CHECK(unit.unit_norm);
  CHECK(unit.row(0)[0] == 0.6);
  CHECK(unit.row(0)[1] == 0.8);
  CHECK(unit.row(1)[0] == 1.0);
  CHECK(unit.row(1)[1] == 0.0);
  CHECK(unit.labels == ds.labels);
}

TEST_CASE("normalizing a zero row is an error") {
  const DataSet ds = make(1, 2, {0, 0}, {1});
  CHECK_THROWS_WITH_AS(normalize_rows(ds),
                       "degenerate data point: zero row",
                       std::invalid_argument);
}

TEST_CASE("validate rejects inconsistent shapes") {
  CHECK_THROWS_AS(validate(make(2, 2, {1, 2, 3}, {1, -1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(make(2, 1, {1, 2}, {1})), std::invalid_argument);
}

TEST_CASE("random datasets are deterministic and well-formed") {
  const DataSet a = random_dataset(16, 8, RngSpec{7}, true);
  const DataSet b = random_dataset(16, 8, RngSpec{7}, true);
  CHECK(a.points == b.points);
  CHECK(a.labels == b.labels);
  CHECK(a.unit_norm);
  for (int i = 0; i < a.n; ++i)
    CHECK(std::abs(l2_norm(a.row(i)) - 1.0) < 1e-12);
  for (double y : a.labels) CHECK((y == 1.0 || y == -1.0));
}

TEST_CASE("binary round trip preserves every bit") {
  DataSet ds = make(2, 2, {0.1, -0.0, 1e-308, 1e300}, {1, -1});
  ds.unit_norm = false;
  const std::string path = temp_path("roundtrip.bin");
  save_dataset(ds, path);
  const DataSet back = load_dataset(path);
  CHECK(back.n == ds.n);
  CHECK(back.d == ds.d);
  CHECK(back.unit_norm == ds.unit_norm);
  CHECK(std::memcmp(back.points.data(), ds.points.data(),
                    ds.points.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(back.labels.data(), ds.labels.data(),
                    ds.labels.size() * sizeof(double)) == 0);
}

TEST_CASE("binary loader rejects bad magic") {
  const std::string path = temp_path("badmagic.bin");
  std::ofstream(path) << "NOPE this is not a dataset";
  CHECK_THROWS_AS(load_dataset(path), std::runtime_error);
}

TEST_CASE("binary loader rejects truncated payload") {
  const DataSet ds = random_dataset(3, 2, RngSpec{1}, false);
  const std::string path = temp_path("trunc.bin");
  save_dataset(ds, path);
  // chop the file short of the declared payload
  const auto full = std::filesystem::file_size(path);
  std::filesystem::resize_file(path, full - 20);
  CHECK_THROWS_AS(load_dataset(path), std::runtime_error);
}

TEST_CASE("missing file is an error") {
  CHECK_THROWS_AS(load_dataset(temp_path("does_not_exist.bin")),
                  std::runtime_error);
}

TEST_CASE("csv round trip preserves every bit") {
  const DataSet ds = random_dataset(5, 3, RngSpec{11}, true);
  const std::string path = temp_path("roundtrip.csv");
  save_dataset_csv(ds, path);
  const DataSet back = load_dataset_csv(path);
  CHECK(back.n == ds.n);
  CHECK(back.d == ds.d);
  CHECK(back.points == ds.points);
  CHECK(back.labels == ds.labels);
}

TEST_CASE("csv header is the pinned schema") {
  const DataSet ds = make(1, 2, {1, 2}, {3});
  const std::string path = temp_path("header.csv");
  save_dataset_csv(ds, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x0,x1,y");
}

TEST_CASE("csv loader rejects malformed input") {
  const std::string path = temp_path("bad.csv");
  std::ofstream(path) << "x0,x1,y\n1.0,2.0\n";
  CHECK_THROWS_AS(load_dataset_csv(path), std::runtime_error);
  std::ofstream(path) << "x0,x1,y\n1.0,abc,3\n";
  CHECK_THROWS_AS(load_dataset_csv(path), std::runtime_error);
  std::ofstream(path) << "a,b,c\n1,2,3\n";
  CHECK_THROWS_AS(load_dataset_csv(path), std::runtime_error);
}
