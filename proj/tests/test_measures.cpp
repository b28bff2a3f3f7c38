#include <doctest.h>

#include "cubedim/measures.hpp"
#include "support.hpp"

using namespace cubedim;
using namespace cubedim::testsupport;

TEST_CASE("triadic mass split per level") {
  const CubeTree tree = unfold_spec(triadic_spec(), 3);

  SUBCASE("p = 1/4 gives (1/4, 1/2, 1/4) in child order") {
    const MassAssignment mu = build_mu_p(tree, Rational(1, 4));
    const auto& children = tree.cubes[tree.root_id()].children;
    REQUIRE(children.size() == 3);
    CHECK(mu.masses[children[0]] == Rational(1, 4));
    CHECK(mu.masses[children[1]] == Rational(1, 2));
    CHECK(mu.masses[children[2]] == Rational(1, 4));
  }
  SUBCASE("p = 1/3 is uniform") {
    const MassAssignment mu = build_mu_p(tree, Rational(1, 3));
    for (int ch : tree.cubes[tree.root_id()].children) CHECK(mu.masses[ch] == Rational(1, 3));
  }
}

TEST_CASE("chain specs give every cube full mass") {
  const CubeTree tree = unfold_spec(uniform_spec(1, Rational(1, 8), 1), 6);
  const MassAssignment mu = build_mu_p(tree, Rational(1, 2));
  for (const auto& cube : tree.cubes) CHECK(mu.masses[cube.id] == Rational(1));
}

TEST_CASE("the general distribution reduces to mu_p at one slot") {
  const CubeTree tree = unfold_spec(triadic_spec(), 4);
  const MassAssignment a = build_mu_p(tree, Rational(1, 5));
  const MassAssignment b = build_mu_p_eta(tree, Rational(1, 5), {Rational(1)});
  CHECK(a.masses == b.masses);
}

TEST_CASE("two central slots split the remainder in proportion eta") {
  const CubeTree tree = unfold_spec(uniform_spec(4, Rational(1, 8), 2), 3);
  const MassAssignment mu =
      build_mu_p_eta(tree, Rational(1, 8), {Rational(1, 2), Rational(1, 2)});
  for (int ch : tree.cubes[tree.root_id()].children) {
    const Cube& child = tree.cubes[ch];
    CHECK(mu.masses[ch] == (child.slot > 0 ? Rational(3, 8) : Rational(1, 8)));
  }
}

TEST_CASE("invalid measure parameters are rejected") {
  const CubeTree tree = unfold_spec(triadic_spec(), 3);
  CHECK_THROWS_AS(build_mu_p(tree, Rational(0)), Error);
  CHECK_THROWS_AS(build_mu_p(tree, Rational(-1, 4)), Error);
  CHECK_THROWS_AS(build_mu_p(tree, Rational(1, 2)), Error);  // central remainder vanishes
  CHECK_THROWS_AS(build_mu_p_eta(tree, Rational(1, 4), {Rational(2, 3), Rational(1, 2)}), Error);
  CHECK_THROWS_AS(build_mu_p_eta(tree, Rational(1, 4), {Rational(1, 2), Rational(1, 2)}), Error);

  const CubeTree two_slots = unfold_spec(uniform_spec(4, Rational(1, 8), 2), 2);
  CHECK_THROWS_AS(build_mu_p(two_slots, Rational(1, 8)), Error);  // StructureError
}

TEST_CASE("masses conserve to one on every level") {
  for (const TreeSpec& spec :
       {triadic_spec(), uniform_spec(4, Rational(1, 8), 2), boundary_rich_spec(1, 2, 2, Rational(1, 8))}) {
    const CubeTree tree = unfold_spec(spec, 6);
    const std::vector<Rational> eta(spec.num_slots, Rational(1, spec.num_slots));
    const MassAssignment mu = build_mu_p_eta(tree, Rational(1, 9), eta);
    for (int k = 0; k <= tree.num_levels; ++k) {
      Rational sum = 0;
      for (int id : tree.level_cubes[k]) sum += mu.masses[id];
      CHECK(sum == Rational(1));
    }
  }
}

TEST_CASE("mass maps are unique given tree and parameters") {
  const CubeTree tree = unfold_spec(triadic_spec(), 5);
  CHECK(build_mu_p(tree, Rational(2, 7)).masses == build_mu_p(tree, Rational(2, 7)).masses);
}

TEST_CASE("masses equalize as p approaches the uniform point") {
  const CubeTree tree = unfold_spec(triadic_spec(), 1);
  const Rational p = Rational(1, 3) - Rational(1, 1000000);
  const MassAssignment mu = build_mu_p(tree, p);
  Rational lo = mu.masses[tree.level_cubes[1][0]], hi = lo;
  for (int id : tree.level_cubes[1]) {
    lo = std::min(lo, mu.masses[id]);
    hi = std::max(hi, mu.masses[id]);
  }
  CHECK(hi / lo < Rational(1001, 1000));
  CHECK(hi / lo > Rational(1));
}

TEST_CASE("ball masses on the triadic block tree") {
  const auto space = triadic_grid_points(3);
  const CubeTree tree = triadic_block_tree(space, 3);
  REQUIRE(validate_tree(tree, &space).pass);
  const MassAssignment mu = build_mu_p(tree, Rational(1, 4));

  SUBCASE("radius past the diameter captures everything") {
    CHECK(ball_mass(space, tree, mu, 5, 2.0).mass == Rational(1));
  }
  SUBCASE("radius below the resolution captures the leaf") {
    const BallMass bm = ball_mass(space, tree, mu, 0, 1.0 / 100.0);
    CHECK(bm.mass == Rational(1, 64));  // leftmost leaf: boundary three times
    CHECK(bm.clamped);
  }
  SUBCASE("ball at the origin, radius 1/9, against a hand enumeration") {
    // points within 1/9 of 0: {0, 1/27, 2/27, 3/27}; leaves 0,1,2 in the left
    // sub-block, leaf 3 in the middle one
    const Rational expected = Rational(1, 4) * Rational(1, 4) *
                                  (Rational(1, 4) + Rational(1, 2) + Rational(1, 4)) +
                              Rational(1, 4) * Rational(1, 2) * Rational(1, 4);
    CHECK(ball_mass(space, tree, mu, 0, 1.0 / 9.0).mass == expected);
  }
  SUBCASE("ball mass dominates the containing cube's mass at the matching level") {
    for (int x : {0, 7, 13, 22, 26}) {
      for (double t : {1.0 / 3.0, 1.0 / 9.0, 1.0 / 27.0}) {
        const BallMass bm = ball_mass(space, tree, mu, x, t);
        // containing cube at level n_t
        int cube = -1;
        for (int id : tree.level_cubes[bm.level]) {
          const auto& m = tree.cubes[id].members;
          if (std::binary_search(m.begin(), m.end(), x)) cube = id;
        }
        REQUIRE(cube >= 0);
        CHECK(bm.mass >= mu.masses[cube]);
      }
    }
  }
}

TEST_CASE("slot selection keeps interior children and rejects crowded ones") {
  const auto space = grid_points(1, 101);
  CubeTree tree = build_cube_tree(space, Rational(1, 10), 2, 0);

  // a level-1 cube away from the edges of [0,1]
  int target = -1;
  for (int id : tree.level_cubes[1]) {
    const Cube& cube = tree.cubes[id];
    if (cube.children.size() >= 3 && space.coordinate(cube.center, 0) > 0.2 &&
        space.coordinate(cube.center, 0) < 0.8)
      target = id;
  }
  REQUIRE(target >= 0);
  const Cube& cube = tree.cubes[target];

  SUBCASE("J = 1 selects the central child") {
    const auto selected = select_central_subcubes(tree, space, target, 1);
    REQUIRE(selected.size() == 1);
    CHECK(tree.cubes[selected[0]].center == cube.center);
    CHECK(tree.cubes[selected[0]].slot == 1);
  }
  SUBCASE("J = M_Q fails: edge children touch the complement") {
    // hand-check: some child center sits within delta^k/6 of the complement
    const double threshold = pow_rational(tree.delta, cube.level).convert_to<double>() / 6.0;
    double closest = 1e300;
    for (int ch : cube.children) {
      double dist = 1e300;
      for (int q = 0; q < space.size(); ++q) {
        const auto& members = cube.members;
        if (!std::binary_search(members.begin(), members.end(), q))
          dist = std::min(dist, space.distance(tree.cubes[ch].center, q) / tree.scale);
      }
      closest = std::min(closest, dist);
    }
    REQUIRE(closest < threshold);
    CHECK_THROWS_AS(
        select_central_subcubes(tree, space, target, static_cast<int>(cube.children.size())),
        Error);
  }
}

TEST_CASE("slot relabeling feeds the general distribution") {
  const auto space = triadic_grid_points(3);
  CubeTree tree = triadic_block_tree(space, 3);
  select_central_subcubes_all(tree, space, 1);
  const MassAssignment mu = build_mu_p_eta(tree, Rational(1, 9), {Rational(1)});
  Rational sum = 0;
  for (int id : tree.level_cubes[3]) sum += mu.masses[id];
  CHECK(sum == Rational(1));
}
