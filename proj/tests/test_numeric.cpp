#include <vector>

#include "corrtree/numeric.hpp"
#include "doctest.h"

using namespace corrtree;

TEST_CASE("dot products on small integers are exact") {
  const std::vector<double> a{3, 1}, b{1, 2};
  CHECK(dot(a, b) == 5.0);
  const std::vector<double> z{0, 0};
  CHECK(dot(a, z) == 0.0);
  const std::vector<double> one{1};
  CHECK(dot(one, one) == 1.0);
}

TEST_CASE("dot accumulates in ascending index order") {
  // The library's equivalence guarantees rest on every inner product using
  // this exact summation order; pin it against a hand-rolled loop.
  const std::vector<double> a{0.1, 0.2, 0.3, 0.4, 1e16, -1e16, 0.7};
  const std::vector<double> b{0.9, 0.8, 1.7, 0.3, 1.0, 1.0, 0.2};
  double manual = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) manual += a[k] * b[k];
  CHECK(dot(a, b) == manual);
}

TEST_CASE("l2 norm") {
  const std::vector<double> v{3, 4};
  CHECK(l2_norm(v) == 5.0);
  const std::vector<double> z{0, 0, 0};
  CHECK(l2_norm(z) == 0.0);
}
