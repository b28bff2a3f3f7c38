#pragma once

// Shared test fixtures and independent oracles. Everything here is
// deliberately brute-force: these routines are the reference the library is
// checked against, so they must not share code paths with it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cubedim/analysis.hpp"
#include "cubedim/mean_cycle.hpp"
#include "cubedim/measures.hpp"

namespace cubedim::testsupport {

inline FiniteMetricSpace line_points(const std::vector<double>& xs) {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> coords;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ids.push_back(std::to_string(i));
    coords.push_back({xs[i]});
  }
  return FiniteMetricSpace::from_coordinates(std::move(ids), std::move(coords));
}

// Minimal ball cover by trying every center subset of size 1, 2, ... -- only
// for tiny spaces.
inline long brute_cover_min(const FiniteMetricSpace& space, int x, double R, double r) {
  std::vector<int> members;
  for (int i = 0; i < space.size(); ++i)
    if (space.leq(space.distance(x, i), R)) members.push_back(i);
  if (members.empty()) return 0;
  const int n = space.size();
  for (long size = 1; size <= static_cast<long>(members.size()); ++size) {
    // odometer over center tuples; order-insensitive duplicates are harmless
    std::vector<int> idx(size, 0);
    while (true) {
      bool covered_all = true;
      for (int m : members) {
        bool covered = false;
        for (int k = 0; k < size; ++k)
          if (space.leq(space.distance(idx[k], m), r)) covered = true;
        if (!covered) {
          covered_all = false;
          break;
        }
      }
      if (covered_all) return size;
      int pos = static_cast<int>(size) - 1;
      while (pos >= 0 && idx[pos] == n - 1) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
  }
  return static_cast<long>(members.size());
}

// The 3-adic reference grid {j / 3^K} and its explicit interval-block tree:
// level-k cubes are runs of 3^(K-k) consecutive points, centers in the
// middle, exactly the triadic-interval picture at finite resolution.
inline FiniteMetricSpace triadic_grid_points(int levels) {
  long n = 1;
  for (int k = 0; k < levels; ++k) n *= 3;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> coords;
  for (long j = 0; j < n; ++j) {
    ids.push_back(std::to_string(j));
    coords.push_back({static_cast<double>(j) / static_cast<double>(n)});
  }
  return FiniteMetricSpace::from_coordinates(std::move(ids), std::move(coords));
}

inline CubeTree triadic_block_tree(const FiniteMetricSpace& space, int levels) {
  long n = 1;
  for (int k = 0; k < levels; ++k) n *= 3;
  CubeTree tree;
  tree.source = TreeSource::metric;
  tree.delta = Rational(1, 3);
  tree.num_levels = levels;
  tree.scale = 1.0;
  tree.point_ids = space.ids();
  tree.level_cubes.assign(levels + 1, {});

  long width = n;
  std::vector<int> previous;  // cube ids of the coarser level
  for (int k = 0; k <= levels; ++k) {
    std::vector<int> current;
    for (long start = 0; start < n; start += width) {
      Cube cube;
      cube.id = static_cast<int>(tree.cubes.size());
      cube.level = k;
      cube.center = static_cast<int>(start + (width - 1) / 2);
      for (long j = start; j < start + width; ++j) cube.members.push_back(static_cast<int>(j));
      if (k > 0) {
        cube.parent = previous[start / (width * 3)];
        tree.cubes[cube.parent].children.push_back(cube.id);
        const bool central = tree.cubes[cube.parent].center == cube.center;
        cube.kind = central ? CubeKind::central : CubeKind::boundary;
        cube.slot = central ? 1 : 0;
      }
      current.push_back(cube.id);
      tree.level_cubes[k].push_back(cube.id);
      tree.cubes.push_back(std::move(cube));
    }
    previous = std::move(current);
    width /= 3;
  }
  tree.origin = tree.cubes[tree.root_id()].center;
  return tree;
}

// counting measure as a mass assignment: mass = |members| / n
inline MassAssignment counting_mass(const CubeTree& tree) {
  MassAssignment mu;
  mu.p = Rational(1, 3);
  mu.eta = {Rational(1)};
  const long n = static_cast<long>(tree.cubes[tree.root_id()].members.size());
  mu.masses.reserve(tree.cubes.size());
  for (const auto& cube : tree.cubes)
    mu.masses.push_back(Rational(static_cast<long>(cube.members.size()), n));
  return mu;
}

// Whole-chain oracle: walks every root-to-depth chain of the spec's
// unfolding, accumulating per-step log mass fractions in double precision,
// and returns the extremal exponents log(1/product) / (depth log(1/delta)).
struct ChainExtremes {
  double max_exponent = 0;
  double min_exponent = 0;
  std::uint64_t chains = 0;
};

inline ChainExtremes whole_chain_extremes(const TreeSpec& spec, const Rational& p,
                                          const std::vector<Rational>& eta, int depth) {
  const double log_inv_delta = -std::log(spec.delta.convert_to<double>());
  // per (type, child) step weight = -log(fraction)
  std::vector<std::vector<double>> step(spec.types.size());
  for (std::size_t t = 0; t < spec.types.size(); ++t) {
    const int boundary = static_cast<int>(spec.types[t].children.size()) - spec.num_slots;
    const double central_total = 1.0 - boundary * p.convert_to<double>();
    for (const auto& c : spec.types[t].children) {
      const double fraction = c.central()
                                  ? central_total * eta[c.slot - 1].convert_to<double>()
                                  : p.convert_to<double>();
      step[t].push_back(-std::log(fraction));
    }
  }

  ChainExtremes out;
  out.max_exponent = -1e300;
  out.min_exponent = 1e300;
  struct Frame {
    int type;
    int level;
    double acc;
  };
  std::vector<Frame> dfs{{spec.root, 0, 0.0}};
  while (!dfs.empty()) {
    const Frame f = dfs.back();
    dfs.pop_back();
    if (f.level == depth) {
      ++out.chains;
      const double exponent = f.acc / (depth * log_inv_delta);
      out.max_exponent = std::max(out.max_exponent, exponent);
      out.min_exponent = std::min(out.min_exponent, exponent);
      continue;
    }
    for (std::size_t c = 0; c < spec.types[f.type].children.size(); ++c)
      dfs.push_back({spec.types[f.type].children[c].type, f.level + 1, f.acc + step[f.type][c]});
  }
  return out;
}

// set-kind oracle: extremal exponents log(#offspring) / (depth log(1/delta))
// over every reachable start type
inline ChainExtremes set_count_extremes(const TreeSpec& spec, int depth) {
  const double log_inv_delta = -std::log(spec.delta.convert_to<double>());
  ChainExtremes out;
  out.max_exponent = -1e300;
  out.min_exponent = 1e300;
  for (int start : spec.reachable_types()) {
    std::vector<double> count(spec.types.size(), 0.0);
    count[start] = 1.0;
    for (int k = 0; k < depth; ++k) {
      std::vector<double> next(spec.types.size(), 0.0);
      for (std::size_t t = 0; t < spec.types.size(); ++t) {
        if (count[t] == 0) continue;
        for (const auto& c : spec.types[t].children) next[c.type] += count[t];
      }
      count = std::move(next);
    }
    double total = 0;
    for (double c : count) total += c;
    const double exponent = std::log(total) / (depth * log_inv_delta);
    out.max_exponent = std::max(out.max_exponent, exponent);
    out.min_exponent = std::min(out.min_exponent, exponent);
  }
  return out;
}

// seeded rational strictly inside (0, hi)
inline Rational random_rational_below(std::mt19937_64& rng, const Rational& hi, long grain = 997) {
  const long a = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(grain));
  return hi * Rational(a, grain + 1);
}

struct BruteCycle {
  bool found = false;
  Rational weight;
  long length = 0;
};

// all simple cycles by DFS from each smallest-index start node
inline BruteCycle brute_mean_cycle(int num_nodes, const std::vector<MeanCycleEdge>& edges,
                                   MeanMode mode, bool maximize) {
  BruteCycle best;
  std::vector<std::vector<std::pair<int, Rational>>> adj(num_nodes);
  for (const auto& e : edges) adj[e.from].push_back({e.to, e.weight});

  std::vector<char> on_path(num_nodes, 0);
  std::vector<int> path;
  auto consider = [&](const Rational& w, long len) {
    if (!best.found) {
      best = {true, w, len};
      return;
    }
    int cmp;
    if (mode == MeanMode::multiplicative)
      cmp = compare_log_mean(w, len, best.weight, best.length);
    else
      cmp = (w * best.length < best.weight * len) ? -1 : ((w * best.length > best.weight * len) ? 1 : 0);
    if (maximize ? cmp > 0 : cmp < 0) best = {true, w, len};
  };

  std::function<void(int, int, Rational)> dfs = [&](int start, int node, Rational acc) {
    for (const auto& [to, w] : adj[node]) {
      if (to < start) continue;  // canonical start = smallest node on the cycle
      const Rational next = mode == MeanMode::multiplicative ? Rational(acc * w) : Rational(acc + w);
      if (to == start) {
        consider(next, static_cast<long>(path.size()) + 1);
        continue;
      }
      if (on_path[to]) continue;
      on_path[to] = 1;
      path.push_back(to);
      dfs(start, to, next);
      path.pop_back();
      on_path[to] = 0;
    }
  };
  for (int start = 0; start < num_nodes; ++start) {
    on_path.assign(num_nodes, 0);
    on_path[start] = 1;
    path.clear();
    dfs(start, start, mode == MeanMode::multiplicative ? Rational(1) : Rational(0));
  }
  return best;
}

}  // namespace cubedim::testsupport
