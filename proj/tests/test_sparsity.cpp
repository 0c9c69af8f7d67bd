#include <stdexcept>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corrtree/network.hpp"
#include "corrtree/sparsity.hpp"
#include "doctest.h"

using namespace corrtree;

TEST_CASE("gaussian upper tail") {
  CHECK(gaussian_upper_tail(0.0) == 0.5);
  // Q(b) at the threshold chosen for m=1024
  CHECK(gaussian_upper_tail(1.6651092223153956) ==
        doctest::Approx(0.04794548357123271).epsilon(1e-10));
  CHECK(gaussian_upper_tail(40.0) == 0.0);
  for (double b : {0.3, 1.0, 2.5})
    CHECK(gaussian_upper_tail(b) + gaussian_upper_tail(-b) ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("threshold choice keeps the tail below the target rate") {
  for (int m : {1024, 4096}) {
    const double q = gaussian_upper_tail(select_b(m));
    CHECK(q < std::pow(static_cast<double>(m), -0.2));
    // and not absurdly below it either
    CHECK(q > 0.1 * std::pow(static_cast<double>(m), -0.2));
  }
}

TEST_CASE("brute-force fire sets on a hand instance") {
  WeightBank bank;
  bank.m = 2;
  bank.d = 2;
  bank.weights = {2, -1, -3, 4};
  bank.signs = {1, 1};
  DataSet ds;
  ds.n = 2;
  ds.d = 2;
  ds.points = {1, 0, 0, 1};
  ds.labels = {1, -1};

  SUBCASE("threshold zero, strict") {
    // correlations: point 0 -> (2, -3), point 1 -> (-1, 4)
    const FireSets fs = fire_sets_bruteforce(bank, ds, 0.0, true);
    CHECK(fs.per_data == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(fs.per_neuron == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(fs.total() == 2);
    CHECK(fs.check_duality());
  }
  SUBCASE("unreachable threshold") {
    const FireSets fs = fire_sets_bruteforce(
        bank, ds, std::numeric_limits<double>::infinity(), true);
    CHECK(fs.total() == 0);
    CHECK(fs.check_duality());
  }
  SUBCASE("boundary handling") {
    const FireSets strict = fire_sets_bruteforce(bank, ds, 2.0, true);
    const FireSets loose = fire_sets_bruteforce(bank, ds, 2.0, false);
    CHECK(strict.per_data[0].empty());
    CHECK(loose.per_data[0] == std::vector<int>{0});
  }
}

TEST_CASE("initialization sparsity report") {
  SUBCASE("frozen thresholds and caps") {
    RngSpec rng{7};
    const SparsityReport rep = measure_init_sparsity(4096, 8, 4, 2, rng);
    CHECK(rep.b == doctest::Approx(1.8240357635440534).epsilon(1e-12));
    CHECK(rep.predicted_tail ==
          doctest::Approx(0.03407333282856281).epsilon(1e-10));
    // ceil(4096^0.8) = ceil(776.046...) = 777
    CHECK(rep.bound == 777);
    CHECK(rep.fire_counts.size() == 2 * 4);
    CHECK(rep.max_fire_count <= rep.bound);
  }
  SUBCASE("power-of-two cap does not ceil past itself") {
    // 1024^0.8 is exactly 256 but pow() can land a hair above; the cap
    // must come out 256, not 257
    const SparsityReport rep = measure_init_sparsity(1024, 4, 2, 1, RngSpec{8});
    CHECK(rep.bound == 256);
  }
  SUBCASE("smallest admissible layer") {
    const SparsityReport rep = measure_init_sparsity(2, 3, 2, 1, RngSpec{9});
    CHECK(rep.b == doctest::Approx(0.5265537695468319).epsilon(1e-12));
  }
  SUBCASE("same spec, same counts") {
    const SparsityReport a = measure_init_sparsity(256, 6, 5, 3, RngSpec{10});
    const SparsityReport b = measure_init_sparsity(256, 6, 5, 3, RngSpec{10});
    CHECK(a.fire_counts == b.fire_counts);
    CHECK(a.mean_fire_fraction == b.mean_fire_fraction);
  }
  SUBCASE("requires unit-norm data") {
    DataSet ds;
    ds.n = 1;
    ds.d = 2;
    ds.points = {3, 4};
    ds.labels = {1};
    ds.unit_norm = false;
    CHECK_THROWS_AS(measure_init_sparsity(ds, 64, 2, RngSpec{11}),
                    std::invalid_argument);
  }
  SUBCASE("empirical rate tracks the gaussian tail") {
    // fire fraction concentrates around Q(b); 20% slack is generous
    // for 5 trials x 8 points x 1024 neurons
    const SparsityReport rep =
        measure_init_sparsity(1024, 16, 8, 5, RngSpec{12});
    CHECK(rep.mean_fire_fraction ==
          doctest::Approx(rep.predicted_tail).epsilon(0.2));
    CHECK(rep.max_fire_count <= rep.bound);
  }
}

TEST_CASE("sparsity csv schema") {
  const SparsityReport rep = measure_init_sparsity(64, 4, 3, 2, RngSpec{13});
  const auto path = (std::filesystem::temp_directory_path() /
                     "corrtree_test_sparsity.csv")
                        .string();
  write_sparsity_csv(rep, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "trial,point,fire_count");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2 * 3);
}

TEST_CASE("summary text names the key statistic") {
  const SparsityReport rep = measure_init_sparsity(64, 4, 3, 1, RngSpec{14});
  const std::string s = sparsity_summary(rep);
  CHECK(s.find("mean fire fraction") != std::string::npos);
}
