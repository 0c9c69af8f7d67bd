#include "corrtree/ddfn.hpp"

#include <cmath>
#include <stdexcept>

namespace corrtree {

namespace {

// Flattens a list of equal-length vectors, returning the common dimension.
int flatten(const std::vector<std::vector<double>>& vecs, const char* what,
            std::vector<double>& out) {
  if (vecs.empty()) throw std::invalid_argument(std::string(what) + " set is empty");
  const int d = static_cast<int>(vecs.front().size());
  if (d == 0) throw std::invalid_argument(std::string(what) + " vectors are empty");
  out.reserve(vecs.size() * static_cast<std::size_t>(d));
  for (const auto& v : vecs) {
    if (static_cast<int>(v.size()) != d)
      throw std::invalid_argument(std::string(what) + " vectors have mixed dimensions");
    out.insert(out.end(), v.begin(), v.end());
  }
  return d;
}

std::size_t enumeration_cap(int m, int n) {
  const double c = std::pow(static_cast<double>(m), 0.8);
  // pow can land a hair above an exact integer; snap before taking the
  // ceiling so e.g. m = 1024 gives exactly 256.
  const double r = std::round(c);
  const double snapped = (std::abs(c - r) < 1e-9) ? r : std::ceil(c);
  return static_cast<std::size_t>(snapped) * static_cast<std::size_t>(n);
}

CorrelationDTree build_tree(const std::vector<std::vector<double>>& xs,
                            const std::vector<std::vector<double>>& ys) {
  DataSet data;
  data.d = flatten(xs, "x", data.points);
  data.n = static_cast<int>(xs.size());
  data.labels.assign(data.n, 0.0);
  WeightBank weights;
  weights.d = flatten(ys, "y", weights.weights);
  weights.m = static_cast<int>(ys.size());
  weights.signs.assign(weights.m, 1.0);
  return CorrelationDTree(weights, data);
}

}  // namespace

DdfnInstance::DdfnInstance(const std::vector<std::vector<double>>& xs,
                           const std::vector<std::vector<double>>& ys,
                           double b)
    : tree_(build_tree(xs, ys)),
      b_(b),
      cap_(enumeration_cap(static_cast<int>(ys.size()),
                           static_cast<int>(xs.size()))) {}

void DdfnInstance::update(int j, std::span<const double> z) {
  tree_.update(j, z);
}

DdfnQueryResult DdfnInstance::query(VisitCounter& counter) const {
  DdfnQueryResult result;
  // Finding cap + 1 pairs proves overflow, so no query ever enumerates
  // further than that.
  const std::size_t limit = cap_ + 1;
  std::size_t total = 0;
  for (int i = 0; i < tree_.n(); ++i) {
    auto js = tree_.query(i, b_, /*strict=*/false, counter, limit - total);
    total += js.size();
    for (int j : js) result.pairs.emplace_back(i, j);
    if (total >= limit) {
      result.overflow = true;
      result.pairs.clear();
      return result;
    }
  }
  return result;
}

std::int64_t max_ip_via_ddfn(const std::vector<std::vector<double>>& xs,
                             const std::vector<std::vector<double>>& ys,
                             std::int64_t entry_bound, int* query_rounds) {
  if (entry_bound < 0) throw std::invalid_argument("entry bound must be nonnegative");
  if (xs.empty() || ys.empty()) throw std::invalid_argument("need nonempty point sets");
  const int d = static_cast<int>(xs.front().size());
  auto check = [&](const std::vector<std::vector<double>>& vecs) {
    for (const auto& v : vecs) {
      if (static_cast<int>(v.size()) != d)
        throw std::invalid_argument("vectors have mixed dimensions");
      for (double c : v) {
        if (std::floor(c) != c || !std::isfinite(c))
          throw std::invalid_argument("coordinates must be integers");
        if (std::abs(c) > static_cast<double>(entry_bound))
          throw std::invalid_argument("coordinate exceeds the entry bound");
      }
    }
  };
  check(xs);
  check(ys);

  // All inner products live in [-d*B^2, d*B^2].
  const double extent_est = 2.0 * d * static_cast<double>(entry_bound) *
                            static_cast<double>(entry_bound);
  if (extent_est > 4.0e18) throw std::invalid_argument("entry bound too large");
  const std::int64_t db2 =
      static_cast<std::int64_t>(d) * entry_bound * entry_bound;

  // Augment so that the candidate threshold t lives on the updatable side:
  // <(x, -1), (y, t)> = <x, y> - t, making "any product >= t" a zero-
  // threshold emptiness question after m single-vector updates.
  std::vector<std::vector<double>> axs = xs;
  for (auto& v : axs) v.push_back(-1.0);
  std::vector<std::vector<double>> ays = ys;
  for (auto& v : ays) v.push_back(0.0);
  DdfnInstance instance(axs, ays, 0.0);

  std::int64_t lo = -db2;     // every pair clears this threshold
  std::int64_t hi = db2 + 1;  // no pair can reach this one
  int rounds = 0;
  VisitCounter counter;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    for (std::size_t j = 0; j < ays.size(); ++j) {
      ays[j].back() = static_cast<double>(mid);
      instance.update(static_cast<int>(j), ays[j]);
    }
    auto result = instance.query(counter);
    ++rounds;
    const bool nonempty = result.overflow || !result.pairs.empty();
    if (nonempty)
      lo = mid;
    else
      hi = mid;
  }
  if (query_rounds) *query_rounds = rounds;
  return lo;
}

}  // namespace corrtree
