#include <doctest.h>

#include "cubedim/cubes.hpp"
#include "cubedim/generators.hpp"
#include "cubedim/io.hpp"
#include "support.hpp"

using namespace cubedim;
using namespace cubedim::testsupport;

TEST_CASE("triadic spec shape") {
  const TreeSpec spec = triadic_spec();
  CHECK(spec.delta == Rational(1, 3));
  CHECK(spec.num_slots == 1);
  REQUIRE(spec.types.size() == 1);
  REQUIRE(spec.types[0].children.size() == 3);
  CHECK(spec.types[0].children[0].slot == 0);
  CHECK(spec.types[0].children[1].slot == 1);
  CHECK(spec.types[0].children[2].slot == 0);
  CHECK(spec.max_branching() == 3);
  CHECK(unfold_spec(spec, 2).level_cubes[2].size() == 9);
}

TEST_CASE("uniform spec variants") {
  CHECK(structurally_equal(triadic_spec(), uniform_spec(3, Rational(1, 3), 1, true)));

  const TreeSpec chain = uniform_spec(1, Rational(1, 8), 1);
  CHECK(chain.max_branching() == 1);
  CHECK(chain.types[0].children.size() == 1);
  CHECK(chain.types[0].children[0].central());

  const TreeSpec two = uniform_spec(2, Rational(1, 8), 1);
  CHECK(two.types[0].children.size() == 2);
  CHECK(two.types[0].children[1].slot == 0);

  CHECK_THROWS_AS(uniform_spec(3, Rational(1, 3), 1), Error);   // needs the relaxation flag
  CHECK_THROWS_AS(uniform_spec(2, Rational(1, 8), 3), Error);   // J > M
  CHECK_THROWS_AS(uniform_spec(0, Rational(1, 8), 1), Error);
}

TEST_CASE("boundary-rich chains carry at most the designated boundary fraction") {
  SUBCASE("all positions designated: all-boundary chains exist at every depth") {
    const TreeSpec spec = boundary_rich_spec(1, 1, 3, Rational(1, 8));
    const CubeTree tree = unfold_spec(spec, 6);
    for (int depth = 1; depth <= 6; ++depth) {
      int best = 0;
      for_each_offspring_chain(tree, tree.root_id(), depth,
                               [&](const std::vector<ChainStep>& chain) {
                                 int boundary = 0;
                                 for (const auto& s : chain)
                                   if (s.kind == CubeKind::boundary) ++boundary;
                                 best = std::max(best, boundary);
                               });
      CHECK(best == depth);
    }
  }
  SUBCASE("period two: boundary steps at most every other level, met exactly") {
    const TreeSpec spec = boundary_rich_spec(1, 2, 2, Rational(1, 8));
    const CubeTree tree = unfold_spec(spec, 12);
    for (int depth = 2; depth <= 12; depth += 2) {
      int best = -1;
      bool over = false;
      for_each_offspring_chain(tree, tree.root_id(), depth,
                               [&](const std::vector<ChainStep>& chain) {
                                 int boundary = 0;
                                 for (const auto& s : chain)
                                   if (s.kind == CubeKind::boundary) ++boundary;
                                 best = std::max(best, boundary);
                                 if (2 * boundary > depth) over = true;
                               });
      CHECK_FALSE(over);
      CHECK(best * 2 == depth);
    }
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(boundary_rich_spec(0, 1, 2, Rational(1, 8)), Error);
    CHECK_THROWS_AS(boundary_rich_spec(3, 2, 2, Rational(1, 8)), Error);
    CHECK_THROWS_AS(boundary_rich_spec(1, 2, 1, Rational(1, 8)), Error);
  }
}

TEST_CASE("cantor endpoints") {
  CHECK(cantor_points(0).size() == 1);
  CHECK(cantor_points(0).coordinate(0, 0) == 0.0);

  const auto depth1 = cantor_points(1);
  REQUIRE(depth1.size() == 2);
  CHECK(depth1.coordinate(0, 0) == doctest::Approx(0.0));
  CHECK(depth1.coordinate(1, 0) == doctest::Approx(2.0 / 3.0));

  const auto depth2 = cantor_points(2);
  REQUIRE(depth2.size() == 4);
  CHECK(depth2.coordinate(0, 0) == doctest::Approx(0.0));
  CHECK(depth2.coordinate(1, 0) == doctest::Approx(2.0 / 9.0));
  CHECK(depth2.coordinate(2, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(depth2.coordinate(3, 0) == doctest::Approx(8.0 / 9.0));

  CHECK(cantor_points(8).size() == 256);
  CHECK_THROWS_AS(cantor_points(13), Error);
}

TEST_CASE("grid points") {
  const auto line = grid_points(1, 3);
  REQUIRE(line.size() == 3);
  CHECK(line.coordinate(0, 0) == 0.0);
  CHECK(line.coordinate(1, 0) == 0.5);
  CHECK(line.coordinate(2, 0) == 1.0);

  const auto square = grid_points(2, 2);
  REQUIRE(square.size() == 4);
  CHECK(square.diameter() == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(grid_points(6, 10), Error);
}

TEST_CASE("random points are deterministic per seed") {
  const auto a = random_points(2, 10, 7);
  const auto b = random_points(2, 10, 7);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int k = 0; k < 2; ++k) CHECK(a.coordinate(i, k) == b.coordinate(i, k));
  const auto c = random_points(2, 10, 8);
  bool all_equal = true;
  for (int i = 0; i < a.size(); ++i)
    for (int k = 0; k < 2; ++k)
      if (a.coordinate(i, k) != c.coordinate(i, k)) all_equal = false;
  CHECK_FALSE(all_equal);
  CHECK_THROWS_AS(random_points(2, 20000, 1), Error);
}

TEST_CASE("generator outputs serialize byte-identically across calls") {
  CHECK(tree_spec_to_json(triadic_spec()) == tree_spec_to_json(triadic_spec()));
  CHECK(tree_spec_to_json(boundary_rich_spec(1, 2, 2, Rational(1, 8))) ==
        tree_spec_to_json(boundary_rich_spec(1, 2, 2, Rational(1, 8))));
  CHECK(points_to_csv(cantor_points(5)) == points_to_csv(cantor_points(5)));
  CHECK(points_to_csv(random_points(3, 50, 42)) == points_to_csv(random_points(3, 50, 42)));
}
