#include <limits>
#include <stdexcept>
#include <vector>

#include "corrtree/maxtree.hpp"
#include "doctest.h"

using namespace corrtree;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<double> kFour{5, 1, 3, 9};
}  // namespace

TEST_CASE("build finds the max") {
  CHECK(MaxTree(kFour).root_max() == 9.0);
  CHECK(MaxTree(std::vector<double>{7}).root_max() == 7.0);
}

TEST_CASE("odd leaf counts pad to a well-formed tree") {
  MaxTree tree(std::vector<double>{2, 8, 6});
  CHECK(tree.root_max() == 8.0);
  CHECK(tree.size() == 3);
  CHECK(tree.check_heap_property());
  // padding never leaks into results, even when everything qualifies
  VisitCounter counter;
  CHECK(tree.query_above(-kInf, false, counter) ==
        std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("empty input is an error") {
  CHECK_THROWS_AS(MaxTree(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("lowering a leaf lowers stale ancestors") {
  // A max heap cannot shrink by only merging the new value upward; the
  // update must recompute each ancestor from both children.
  MaxTree tree(kFour);
  tree.update_leaf(3, 2);
  CHECK(tree.root_max() == 5.0);
  CHECK(tree.check_heap_property());
}

TEST_CASE("raising a leaf raises the root") {
  MaxTree tree(kFour);
  tree.update_leaf(0, 11);
  CHECK(tree.root_max() == 11.0);
}

TEST_CASE("updating a leaf to its current value changes nothing") {
  MaxTree tree(kFour);
  tree.update_leaf(2, 3);
  for (std::size_t i = 0; i < 4; ++i) CHECK(tree.leaf_value(i) == kFour[i]);
  CHECK(tree.root_max() == 9.0);
  CHECK(tree.check_heap_property());
}

TEST_CASE("updates write exactly one root path") {
  MaxTree tree(kFour);
  CHECK(tree.update_leaf(1, 4) == static_cast<std::size_t>(tree.depth()) + 1);
  MaxTree single(std::vector<double>{7});
  CHECK(single.update_leaf(0, 9) == 1);
  CHECK(single.root_max() == 9.0);
}

TEST_CASE("update rejects bad leaf indices") {
  MaxTree tree(kFour);
  CHECK_THROWS_AS(tree.update_leaf(4, 0), std::out_of_range);
  CHECK_THROWS_AS(tree.leaf_value(4), std::out_of_range);
}

TEST_CASE("threshold queries") {
  MaxTree tree(kFour);
  VisitCounter counter;
  CHECK(tree.query_above(4, true, counter) == std::vector<std::size_t>{0, 3});

  SUBCASE("a failing root is the only node visited") {
    VisitCounter c;
    CHECK(tree.query_above(9, true, c).empty());
    CHECK(c.nodes_visited == 1);
  }
  SUBCASE("non-strict keeps the boundary") {
    VisitCounter c;
    CHECK(tree.query_above(9, false, c) == std::vector<std::size_t>{3});
  }
  SUBCASE("+inf matches nothing") {
    VisitCounter c;
    CHECK(tree.query_above(kInf, false, c).empty());
  }
}

TEST_CASE("capped queries return a prefix") {
  MaxTree tree(std::vector<double>{5, 1, 3, 9, 7, 2});
  VisitCounter full_counter;
  const auto full = tree.query_above(2, true, full_counter);
  CHECK(full == std::vector<std::size_t>{0, 2, 3, 4});
  for (std::size_t cap = 0; cap <= full.size(); ++cap) {
    VisitCounter c;
    const auto got = tree.query_above(2, true, c, cap);
    CHECK(got == std::vector<std::size_t>(full.begin(), full.begin() + cap));
    CHECK(c.nodes_visited <= full_counter.nodes_visited);
  }
}

TEST_CASE("visit count respects the pruning bound") {
  const std::vector<double> values{4, 4, 4, 4, 0, 0, 0, 0, 9};
  MaxTree tree(values);
  const int levels = tree.depth() + 1;
  VisitCounter c;
  const auto got = tree.query_above(3.5, true, c);
  CHECK(got.size() == 5);
  CHECK(c.nodes_visited <= 2 * static_cast<std::int64_t>(got.size() + 1) * levels + 1);
}
