#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "corrtree/ddfn.hpp"
#include "corrtree/rng.hpp"
#include "doctest.h"

using namespace corrtree;

namespace {

using Vecs = std::vector<std::vector<double>>;

// X = {(1,0),(0,1)}, Y = {(1,1),(-1,-1)}, b = 1: the products against y0
// are both exactly 1 (kept by the non-strict rule) and against y1 both -1.
DdfnInstance hand_instance() {
  return DdfnInstance(Vecs{{1, 0}, {0, 1}}, Vecs{{1, 1}, {-1, -1}}, 1.0);
}

}  // namespace

TEST_CASE("enumeration cap is ceil(m^0.8) * n") {
  CHECK(hand_instance().cap() == 4);  // ceil(2^0.8) = 2, times n = 2
  DdfnInstance wide(Vecs(3, std::vector<double>{1}),
                    Vecs(1024, std::vector<double>{1}), 100.0);
  // 1024^0.8 is exactly 256; a naive ceil of the pow() result lands on 257
  CHECK(wide.cap() == 256 * 3);
}

TEST_CASE("query keeps boundary pairs") {
  VisitCounter counter;
  const auto result = hand_instance().query(counter);
  CHECK_FALSE(result.overflow);
  CHECK(result.pairs ==
        std::vector<std::pair<int, int>>{{0, 0}, {1, 0}});
}

TEST_CASE("an impossible threshold reports nothing") {
  DdfnInstance instance(Vecs{{1, 0}, {0, 1}}, Vecs{{1, 1}, {-1, -1}},
                        std::numeric_limits<double>::infinity());
  VisitCounter counter;
  const auto result = instance.query(counter);
  CHECK_FALSE(result.overflow);
  CHECK(result.pairs.empty());
}

TEST_CASE("updates retarget one vector") {
  auto instance = hand_instance();
  const std::vector<double> z{2, 2};
  instance.update(0, z);
  VisitCounter counter;
  const auto result = instance.query(counter);
  CHECK(result.pairs ==
        std::vector<std::pair<int, int>>{{0, 0}, {1, 0}});

  SUBCASE("self-update leaves the answer unchanged") {
    instance.update(0, z);
    VisitCounter c;
    CHECK(instance.query(c).pairs == result.pairs);
  }
}

TEST_CASE("an all-equal instance past the cap overflows") {
  // 8 identical y vectors against 2 identical x vectors at b=0: all 16
  // pairs qualify, while the cap is ceil(8^0.8) * 2 = 12.
  DdfnInstance instance(Vecs(2, std::vector<double>{1, 0}),
                        Vecs(8, std::vector<double>{1, 0}), 0.0);
  CHECK(instance.cap() == 12);
  VisitCounter counter;
  const auto result = instance.query(counter);
  CHECK(result.overflow);
  CHECK(result.pairs.empty());
}

TEST_CASE("singleton instance") {
  DdfnInstance instance(Vecs{{2}}, Vecs{{3}}, 6.0);
  VisitCounter counter;
  CHECK(instance.query(counter).pairs ==
        std::vector<std::pair<int, int>>{{0, 0}});
}

TEST_CASE("construction validates shapes") {
  CHECK_THROWS_AS(DdfnInstance(Vecs{{1, 0}}, Vecs{{1}}, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(DdfnInstance(Vecs{}, Vecs{{1}}, 0.0), std::invalid_argument);
}

TEST_CASE("max inner product by binary search") {
  // products: 5, 6, 4, 0
  CHECK(max_ip_via_ddfn(Vecs{{3, 1}, {0, 2}}, Vecs{{1, 2}, {2, 0}}, 10) == 6);
  CHECK(max_ip_via_ddfn(Vecs{{1}}, Vecs{{1}}, 1) == 1);
  CHECK(max_ip_via_ddfn(Vecs{{-3}}, Vecs{{3}}, 3) == -9);
  CHECK(max_ip_via_ddfn(Vecs{{0, 0}}, Vecs{{0, 0}}, 0) == 0);
}

TEST_CASE("max inner product validates its input") {
  CHECK_THROWS_AS(max_ip_via_ddfn(Vecs{{0.5}}, Vecs{{1}}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(max_ip_via_ddfn(Vecs{{5}}, Vecs{{1}}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(max_ip_via_ddfn(Vecs{}, Vecs{{1}}, 2),
                  std::invalid_argument);
}

TEST_CASE("binary search stays within its round budget") {
  Rng rng(1618ull);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const int m = 1 + static_cast<int>(rng.below(6));
    const int d = 1 + static_cast<int>(rng.below(5));
    const std::int64_t bound = 1 + static_cast<std::int64_t>(rng.below(10));
    auto draw = [&](int count) {
      Vecs vs(count, std::vector<double>(d));
      for (auto& v : vs)
        for (auto& x : v)
          x = static_cast<double>(
              static_cast<std::int64_t>(rng.below(2 * bound + 1)) - bound);
      return vs;
    };
    const auto xs = draw(n);
    const auto ys = draw(m);

    std::int64_t expected = std::numeric_limits<std::int64_t>::min();
    for (const auto& x : xs)
      for (const auto& y : ys) {
        std::int64_t ip = 0;
        for (int k = 0; k < d; ++k)
          ip += static_cast<std::int64_t>(x[k]) *
                static_cast<std::int64_t>(y[k]);
        expected = std::max(expected, ip);
      }

    int rounds = 0;
    CHECK(max_ip_via_ddfn(xs, ys, bound, &rounds) == expected);
    const double range = 2.0 * d * static_cast<double>(bound) * bound + 1.0;
    CHECK(rounds <= static_cast<int>(std::ceil(std::log2(range))));
  }
}
