#include "cubedim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cubedim {

namespace {

void check_eta(const std::vector<Rational>& eta) {
  if (eta.empty()) fail(Errc::EtaInvalid, "eta must be non-empty");
  Rational sum = 0;
  for (const auto& e : eta) {
    if (!(e > 0)) fail(Errc::EtaInvalid, "eta entries must be positive");
    sum += e;
  }
  if (sum != 1) fail(Errc::EtaInvalid, "eta must sum to 1, got " + rational_string(sum));
}

MassAssignment distribute(const CubeTree& tree, const Rational& p, std::vector<Rational> eta) {
  const int num_slots = static_cast<int>(eta.size());
  if (!(p > 0)) fail(Errc::POutOfRange, "p must be positive");

  // structural pass: every non-leaf cube carries slots 1..J exactly once, and
  // the central remainder stays positive
  for (const auto& cube : tree.cubes) {
    if (cube.leaf()) continue;
    std::vector<char> seen(num_slots + 1, 0);
    int slots = 0;
    for (int ch : cube.children) {
      const int s = tree.cubes[ch].slot;
      if (s > 0) {
        if (s > num_slots || seen[s])
          fail(Errc::StructureError, "cube " + std::to_string(cube.id) +
                                         " does not carry slots 1.." + std::to_string(num_slots));
        seen[s] = 1;
        ++slots;
      }
    }
    if (slots != num_slots)
      fail(Errc::StructureError, "cube " + std::to_string(cube.id) + " has " +
                                     std::to_string(slots) + " slot children, expected " +
                                     std::to_string(num_slots));
    const int boundary = static_cast<int>(cube.children.size()) - num_slots;
    if (!(Rational(1) - Rational(boundary) * p > 0))
      fail(Errc::POutOfRange, "central mass 1 - (M_Q - J) p vanishes at cube " +
                                  std::to_string(cube.id) + " for p = " + rational_string(p));
  }

  MassAssignment mu;
  mu.p = p;
  mu.eta = std::move(eta);
  mu.masses.assign(tree.cubes.size(), Rational(0));
  for (int id : tree.level_cubes[0]) mu.masses[id] = 1;

  // top-down sweep by level, so the cube array order does not matter
  for (int k = 0; k < tree.num_levels; ++k) {
    for (int id : tree.level_cubes[k]) {
      const Cube& cube = tree.cubes[id];
      if (cube.leaf()) continue;
      const int boundary = static_cast<int>(cube.children.size()) - num_slots;
      const Rational central_total = (Rational(1) - Rational(boundary) * p) * mu.masses[id];
      for (int ch : cube.children) {
        const auto& child = tree.cubes[ch];
        mu.masses[ch] =
            child.slot > 0 ? central_total * mu.eta[child.slot - 1] : p * mu.masses[id];
      }
    }
  }
  return mu;
}

}  // namespace

MassAssignment build_mu_p(const CubeTree& tree, const Rational& p) {
  return distribute(tree, p, {Rational(1)});
}

MassAssignment build_mu_p_eta(const CubeTree& tree, const Rational& p, std::vector<Rational> eta) {
  check_eta(eta);
  return distribute(tree, p, std::move(eta));
}

std::vector<int> select_central_subcubes(CubeTree& tree, const FiniteMetricSpace& space,
                                         int cube_id, int num_slots) {
  if (tree.source != TreeSource::metric)
    fail(Errc::SourceMismatch, "slot selection needs a metric-sourced tree");
  if (cube_id < 0 || cube_id >= static_cast<int>(tree.cubes.size()))
    fail(Errc::InvalidParams, "cube does not exist");
  const Cube& cube = tree.cubes[cube_id];
  if (cube.leaf()) fail(Errc::InvalidParams, "cube has no children");
  if (num_slots < 1 || num_slots > static_cast<int>(cube.children.size()))
    fail(Errc::InvalidParams, "need 1 <= J <= M_Q");

  std::vector<char> inside(space.size(), 0);
  for (int p : cube.members) inside[p] = 1;

  // normalized distance from each child's center to the complement of the cube
  std::vector<std::pair<double, int>> ranked;  // (-distance, child id)
  for (int ch : cube.children) {
    const int center = tree.cubes[ch].center;
    double dist = std::numeric_limits<double>::infinity();
    for (int q = 0; q < space.size(); ++q)
      if (!inside[q]) dist = std::min(dist, space.distance(center, q) / tree.scale);
    ranked.emplace_back(-dist, ch);
  }
  std::sort(ranked.begin(), ranked.end());

  const double dk = pow_rational(tree.delta, cube.level).convert_to<double>();
  const double threshold = dk / 6.0;
  std::vector<int> selected;
  for (int j = 0; j < num_slots; ++j) {
    const double dist = -ranked[j].first;
    if (!(dist >= threshold * (1.0 - space.tolerance())))
      fail(Errc::NotEnoughInteriorChildren,
           "only " + std::to_string(j) + " children of cube " + std::to_string(cube_id) +
               " sit at distance >= delta^k/6 from the complement (delta too large for J = " +
               std::to_string(num_slots) + ")");
    selected.push_back(ranked[j].second);
  }

  for (int ch : cube.children) tree.cubes[ch].slot = 0;
  for (int j = 0; j < num_slots; ++j) tree.cubes[selected[j]].slot = j + 1;
  return selected;
}

void select_central_subcubes_all(CubeTree& tree, const FiniteMetricSpace& space, int num_slots) {
  for (const auto& cube : tree.cubes)
    if (!cube.leaf()) select_central_subcubes(tree, space, cube.id, num_slots);
  tree.num_slots = num_slots;
}

BallMass ball_mass(const FiniteMetricSpace& space, const CubeTree& tree, const MassAssignment& mu,
                   int x, double t) {
  if (tree.source != TreeSource::metric)
    fail(Errc::SourceMismatch, "ball masses need a metric-sourced tree");
  if (x < 0 || x >= space.size()) fail(Errc::InvalidParams, "point index out of range");
  if (!(t > 0)) fail(Errc::InvalidScales, "radius must be positive");
  if (mu.masses.size() != tree.cubes.size())
    fail(Errc::StructureError, "mass assignment does not match the tree");

  BallMass out;
  const long raw_level = scale_index(t / tree.scale, tree.delta);
  out.level = std::clamp<long>(raw_level, 0, tree.num_levels);
  out.clamped = out.level != raw_level;

  out.mass = 0;
  for (int id : tree.level_cubes[tree.num_levels]) {
    for (int p : tree.cubes[id].members) {
      if (space.leq(space.distance(x, p), t)) {
        out.mass += mu.masses[id];
        break;
      }
    }
  }
  return out;
}

}  // namespace cubedim
