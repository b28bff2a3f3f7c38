#pragma once

#include "cubedim/cubes.hpp"

namespace cubedim {

// Exact cube-mass assignment with root mass 1: every boundary child inherits
// p times its parent's mass, the slot children split the central remainder
// 1 - (M_Q - J) p in proportion eta. eta == {1} gives the plain mu_p family.
struct MassAssignment {
  Rational p;
  std::vector<Rational> eta;
  std::vector<Rational> masses;  // indexed by cube id

  const Rational& mass(int cube_id) const { return masses[cube_id]; }
};

// Requires exactly one slot child per non-leaf cube (J = 1).
MassAssignment build_mu_p(const CubeTree& tree, const Rational& p);

// General J-slot distribution; eta must be positive and sum to 1.
MassAssignment build_mu_p_eta(const CubeTree& tree, const Rational& p, std::vector<Rational> eta);

// Ranks the children of `cube_id` by the distance from their centers to the
// complement of the cube (descending, ties by cube id) and re-labels the top
// J as slots 1..J; each selected child must sit at distance >= delta^k / 6
// from the complement. Returns the selected cube ids.
std::vector<int> select_central_subcubes(CubeTree& tree, const FiniteMetricSpace& space,
                                         int cube_id, int num_slots);

// Applies select_central_subcubes to every non-leaf cube and records the new
// slot count on the tree.
void select_central_subcubes_all(CubeTree& tree, const FiniteMetricSpace& space, int num_slots);

struct BallMass {
  Rational mass;
  long level = 0;       // scale index of t, clamped to the tree's levels
  bool clamped = false;
};

// Sum of the masses of deepest-level cubes whose member sets intersect
// B(x, t); exact.
BallMass ball_mass(const FiniteMetricSpace& space, const CubeTree& tree, const MassAssignment& mu,
                   int x, double t);

}  // namespace cubedim
