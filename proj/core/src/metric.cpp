#include "cubedim/metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace cubedim {

CoordMetric coord_metric_from_string(const std::string& name) {
  if (name == "euclidean") return CoordMetric::euclidean;
  if (name == "chebyshev") return CoordMetric::chebyshev;
  if (name == "manhattan") return CoordMetric::manhattan;
  fail(Errc::InvalidParams, "unknown metric '" + name + "'");
}

const char* to_string(CoordMetric m) {
  switch (m) {
    case CoordMetric::euclidean: return "euclidean";
    case CoordMetric::chebyshev: return "chebyshev";
    case CoordMetric::manhattan: return "manhattan";
  }
  return "euclidean";
}

FiniteMetricSpace FiniteMetricSpace::from_coordinates(std::vector<std::string> ids,
                                                      std::vector<std::vector<double>> coords,
                                                      CoordMetric metric) {
  if (ids.empty() || ids.size() != coords.size())
    fail(Errc::InvalidParams, "need matching non-empty id and coordinate lists");
  const int dim = static_cast<int>(coords.front().size());
  if (dim < 1) fail(Errc::InvalidParams, "points need at least one coordinate");
  FiniteMetricSpace s;
  s.ids_ = std::move(ids);
  s.metric_ = metric;
  s.dim_ = dim;
  s.coords_.reserve(s.ids_.size() * dim);
  for (const auto& row : coords) {
    if (static_cast<int>(row.size()) != dim)
      fail(Errc::InvalidParams, "ragged coordinate rows");
    s.coords_.insert(s.coords_.end(), row.begin(), row.end());
  }
  s.finalize();
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<std::string> ids,
                                                 std::vector<double> dense_row_major) {
  const std::size_t n = ids.size();
  if (n == 0 || dense_row_major.size() != n * n)
    fail(Errc::InvalidParams, "matrix must be n*n for n ids");
  FiniteMetricSpace s;
  s.ids_ = std::move(ids);
  s.matrix_ = std::move(dense_row_major);
  s.matrix_mode_ = true;
  s.finalize();
  return s;
}

int FiniteMetricSpace::index_of(const std::string& id) const {
  for (int i = 0; i < size(); ++i)
    if (ids_[i] == id) return i;
  return -1;
}

double FiniteMetricSpace::distance(int a, int b) const {
  if (matrix_mode_) return matrix_[static_cast<std::size_t>(a) * ids_.size() + b];
  const double* pa = coords_.data() + static_cast<std::size_t>(a) * dim_;
  const double* pb = coords_.data() + static_cast<std::size_t>(b) * dim_;
  switch (metric_) {
    case CoordMetric::euclidean: {
      double acc = 0.0;
      for (int k = 0; k < dim_; ++k) {
        const double d = pa[k] - pb[k];
        acc += d * d;
      }
      return std::sqrt(acc);
    }
    case CoordMetric::chebyshev: {
      double acc = 0.0;
      for (int k = 0; k < dim_; ++k) acc = std::max(acc, std::fabs(pa[k] - pb[k]));
      return acc;
    }
    case CoordMetric::manhattan: {
      double acc = 0.0;
      for (int k = 0; k < dim_; ++k) acc += std::fabs(pa[k] - pb[k]);
      return acc;
    }
  }
  return 0.0;
}

void FiniteMetricSpace::finalize() {
  const int n = size();
  double diam = 0.0;
  double minpos = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = distance(i, j);
      if (d > diam) diam = d;
      if (d > 0.0 && d < minpos) minpos = d;
    }
  }
  diameter_ = diam;
  min_positive_ = std::isfinite(minpos) ? minpos : 0.0;
}

MetricValidation validate_metric(const FiniteMetricSpace& space) {
  MetricValidation report;
  const int n = space.size();
  const double tol = space.tolerance();
  auto add = [&](MetricViolation v) {
    report.pass = false;
    if (report.violations.size() < 1000) report.violations.push_back(std::move(v));
  };

  for (int i = 0; i < n; ++i) {
    const double dii = space.distance(i, i);
    if (dii != 0.0) add({"self_distance", {space.id(i)}, {dii}});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dij = space.distance(i, j);
      const double dji = space.distance(j, i);
      if (dij < 0.0) add({"negativity", {space.id(i), space.id(j)}, {dij}});
      if (dij != dji) add({"symmetry", {space.id(i), space.id(j)}, {dij, dji}});
      if (dij == 0.0) add({"positivity", {space.id(i), space.id(j)}, {dij}});
    }
  }

  auto triangle = [&](int a, int b, int c) {
    const double dac = space.distance(a, c);
    const double bound = space.distance(a, b) + space.distance(b, c);
    if (dac > bound + tol * std::max(1.0, bound))
      add({"triangle", {space.id(a), space.id(b), space.id(c)}, {dac, bound}});
  };

  if (n <= 500) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (a != b && b != c && a != c) triangle(a, b, c);
  } else {
    report.sampled = true;
    std::mt19937_64 rng(0);
    const std::uint64_t samples = 64ull * static_cast<std::uint64_t>(n);
    for (std::uint64_t k = 0; k < samples; ++k) {
      const int a = static_cast<int>(rng() % n);
      const int b = static_cast<int>(rng() % n);
      const int c = static_cast<int>(rng() % n);
      if (a != b && b != c && a != c) triangle(a, b, c);
    }
  }
  return report;
}

std::vector<int> greedy_net(const FiniteMetricSpace& space, const std::vector<int>& candidates,
                            double radius, const std::vector<int>& seeds) {
  if (!(radius > 0.0)) fail(Errc::InvalidParams, "net radius must be positive");
  std::vector<char> is_candidate(space.size(), 0);
  for (int c : candidates) {
    if (c < 0 || c >= space.size()) fail(Errc::InvalidParams, "candidate index out of range");
    is_candidate[c] = 1;
  }
  for (int s : seeds)
    if (s < 0 || s >= space.size() || !is_candidate[s])
      fail(Errc::InvalidParams, "seed is not a candidate");
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = i + 1; j < seeds.size(); ++j)
      if (space.distance(seeds[i], seeds[j]) <= radius)
        fail(Errc::SeedConflict, "seeds " + space.id(seeds[i]) + " and " + space.id(seeds[j]) +
                                     " are within the net radius");

  std::vector<int> order(candidates);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<int> net(seeds);
  for (int c : order) {
    bool covered = false;
    for (int p : net) {
      if (space.distance(c, p) <= radius) {
        covered = true;
        break;
      }
    }
    if (!covered) net.push_back(c);
  }
  return net;
}

namespace {

// Exact minimum set cover over <= exact_cap ball members, by depth-first
// branching on the lowest uncovered element.
long exact_cover(const std::vector<std::uint32_t>& sets, std::uint32_t universe) {
  long best = std::popcount(universe);  // one singleton ball per element always works
  // tighten with the greedy solution first
  {
    std::uint32_t left = universe;
    long used = 0;
    while (left) {
      std::uint32_t pick = 0;
      int pick_count = -1;
      for (std::uint32_t s : sets) {
        const int c = std::popcount(s & left);
        if (c > pick_count) {
          pick_count = c;
          pick = s;
        }
      }
      if (pick_count <= 0) break;
      left &= ~pick;
      ++used;
    }
    if (!left) best = std::min(best, used);
  }

  int max_set = 1;
  for (std::uint32_t s : sets) max_set = std::max(max_set, std::popcount(s));

  std::vector<std::pair<std::uint32_t, long>> stack;  // (uncovered, used)
  stack.emplace_back(universe, 0);
  while (!stack.empty()) {
    auto [left, used] = stack.back();
    stack.pop_back();
    if (!left) {
      best = std::min(best, used);
      continue;
    }
    // lower bound prune
    const long lb = (std::popcount(left) + max_set - 1) / max_set;
    if (used + lb >= best) continue;
    const std::uint32_t elem = left & (~left + 1);  // lowest uncovered element
    for (std::uint32_t s : sets)
      if (s & elem) stack.emplace_back(left & ~s, used + 1);
  }
  return best;
}

}  // namespace

long covering_number(const FiniteMetricSpace& space, int x, double R, double r, CoverMode mode,
                     int exact_cap) {
  if (x < 0 || x >= space.size()) fail(Errc::InvalidParams, "center index out of range");
  if (!(r > 0.0) || r > R) fail(Errc::InvalidScales, "need 0 < r <= R");
  if (exact_cap < 1 || exact_cap > 32)
    fail(Errc::InvalidParams, "exact cover is limited to caps between 1 and 32");

  std::vector<int> members;
  for (int i = 0; i < space.size(); ++i)
    if (space.leq(space.distance(x, i), R)) members.push_back(i);

  if (mode == CoverMode::greedy) {
    // Seeding the net with the query point makes greedy(r = R) == 1 == exact.
    return static_cast<long>(greedy_net(space, members, r, {x}).size());
  }

  const int m = static_cast<int>(members.size());
  if (m > exact_cap)
    fail(Errc::InstanceTooLarge, "ball has " + std::to_string(m) + " members, exact cap is " +
                                     std::to_string(exact_cap));
  if (m == 0) return 0;

  // Candidate r-balls centered anywhere in the space, reduced to distinct
  // maximal member masks.
  std::vector<std::uint32_t> sets;
  for (int c = 0; c < space.size(); ++c) {
    std::uint32_t mask = 0;
    for (int k = 0; k < m; ++k)
      if (space.leq(space.distance(c, members[k]), r)) mask |= (1u << k);
    if (mask) sets.push_back(mask);
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t s : sets) {
    bool dominated = false;
    for (std::uint32_t t : sets)
      if (t != s && (s & t) == s) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(s);
  }

  const std::uint32_t universe = (m == 32) ? ~0u : ((1u << m) - 1);
  return exact_cover(maximal, universe);
}

long scale_index(double t, const Rational& delta) {
  if (!(t > 0.0)) fail(Errc::InvalidScales, "t must be positive");
  if (!(delta > 0 && delta < 1)) fail(Errc::ParamsOutOfRange, "delta must lie in (0,1)");
  const double ld = log_rational(delta);  // negative
  const double lt = std::log(t);
  // delta^n <= t up to relative 1e-12 slack, checked explicitly around the
  // floating-point estimate.
  auto ok = [&](double n) { return n * ld <= lt + 1e-12; };
  long n = static_cast<long>(std::ceil(lt / ld));
  while (ok(static_cast<double>(n - 1))) --n;
  while (!ok(static_cast<double>(n))) ++n;
  return n;
}

}  // namespace cubedim
