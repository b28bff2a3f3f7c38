#pragma once

#include <cstdint>
#include <vector>

#include "cubedim/metric.hpp"
#include "cubedim/rational.hpp"

namespace cubedim {

struct SpecChild {
  int type = 0;
  int slot = 0;  // 0 = boundary child, 1..J = central slot
  bool central() const { return slot > 0; }
};

struct SpecType {
  std::vector<SpecChild> children;
};

// Symbolic, eventually-self-similar cube-tree blueprint: one node type per
// behaviour, each with an ordered child list. Dimensions of the induced
// infinite tree are computable exactly; unfold_spec materializes finite
// truncations. delta below 1/7 is the regime in which metric realizations
// exist with the sandwich constants 1/3 and 2; larger delta is admitted for
// reference constructions behind relaxed_delta.
struct TreeSpec {
  Rational delta;
  int root = 0;
  int num_slots = 1;  // J: central slots per type, uniform across types
  std::vector<SpecType> types;
  bool relaxed_delta = false;

  void validate() const;                // throws InvalidParams / DeltaOutOfRange
  int branching(int type) const;        // M_Q for the given type
  int max_branching() const;            // M
  std::vector<int> reachable_types() const;

  // child order canonicalized to (slot desc, boundary last); used for the
  // structural-equality contract between generator variants
  TreeSpec canonical() const;
};

bool structurally_equal(const TreeSpec& a, const TreeSpec& b);

// The triadic reference construction: one type, delta 1/3, children
// (boundary, central slot 1, boundary).
TreeSpec triadic_spec();

// One type with `branching` children: J central slots, then branching - J
// boundary children.
TreeSpec uniform_spec(int branching, const Rational& delta, int num_slots,
                      bool relax_delta = false);

// Period-n cycle of types in which the first beta_num positions can take a
// boundary step (one central slot plus branching - 1 boundary children, all
// continuing the cycle) and the rest continue through a single central child.
// Every chain takes at most beta_num boundary steps per period, and maximal
// chains take exactly that many.
TreeSpec boundary_rich_spec(int beta_num, int beta_den, int branching, const Rational& delta,
                            bool relax_delta = false);

// Left endpoints of the depth-level middle-thirds construction intervals.
FiniteMetricSpace cantor_points(int depth);

// Lattice {0..side-1}^dim scaled by 1/(side-1).
FiniteMetricSpace grid_points(int dim, int side, CoordMetric metric = CoordMetric::euclidean);

// Deterministic seeded points in [0,1]^dim.
FiniteMetricSpace random_points(int dim, int count, std::uint64_t seed,
                                CoordMetric metric = CoordMetric::euclidean);

}  // namespace cubedim
