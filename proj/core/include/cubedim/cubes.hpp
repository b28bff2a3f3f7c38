#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cubedim/generators.hpp"
#include "cubedim/metric.hpp"

namespace cubedim {

enum class CubeKind { root, central, boundary };
enum class TreeSource { metric, spec };

const char* to_string(CubeKind k);
const char* to_string(TreeSource s);

struct Cube {
  int id = -1;
  int level = 0;
  int parent = -1;   // -1 at level 0
  int center = -1;   // point index; -1 for spec-sourced trees
  int type = -1;     // spec type index; -1 for metric-sourced trees
  CubeKind kind = CubeKind::root;
  int slot = 0;      // 1..J marks a mass-distribution slot child
  std::vector<int> children;
  std::vector<int> members;  // point indices, metric-sourced trees only

  bool leaf() const { return children.empty(); }
};

// An explicit finite realization of the nested cube families: leveled,
// nested cubes with centers, parent links and central/boundary child
// classification. Metric-sourced trees live over a FiniteMetricSpace whose
// distances are normalized by `scale` so that level-k cubes sit at scale
// delta^k with the sandwich constants 1/3 and 2.
struct CubeTree {
  TreeSource source = TreeSource::spec;
  Rational delta;
  int num_levels = 0;  // levels run 0..num_levels
  int num_slots = 1;   // J
  int origin = -1;     // point index of x_0 (metric-sourced)
  double scale = 1.0;  // raw distances are divided by this (metric-sourced)
  int vacuous_from = -1;  // first level refining only singletons, -1 if none
  std::vector<std::string> point_ids;  // copy of the source space ids (metric-sourced)
  std::vector<Cube> cubes;             // id == index, level-major order
  std::vector<std::vector<int>> level_cubes;

  int root_id() const { return 0; }
  int depth() const { return num_levels; }
  const Cube& cube(int id) const { return cubes[id]; }
  int max_branching() const;
};

int max_branching(const CubeTree& tree);

// Nested-net construction: greedy nets N_0 contained in N_1 contained in ...
// seeded by the previous level with the origin first, top-down
// nearest-center attachment, ties by point index. The sandwich property is
// verified afterwards, not assumed; violations raise SandwichViolation.
CubeTree build_cube_tree(const FiniteMetricSpace& space, const Rational& delta, int num_levels,
                         int origin);

// Explicit finite truncation of a symbolic spec.
CubeTree unfold_spec(const TreeSpec& spec, int depth);

struct PropertyCheck {
  std::string property;
  bool checked = true;  // sandwich is skipped for spec-sourced trees
  bool pass = true;
  std::vector<std::string> witnesses;
};

struct TreeValidation {
  bool pass = true;
  std::vector<PropertyCheck> properties;

  const PropertyCheck* find(const std::string& name) const;
};

// Per-property validation: partition, nesting, sandwich (metric only, exact
// constants 1/3 and 2), origin, center persistence, central children.
TreeValidation validate_tree(const CubeTree& tree, const FiniteMetricSpace* space = nullptr);

struct ChainStep {
  int cube = -1;
  CubeKind kind = CubeKind::central;
  int slot = 0;
};

// Streams every descending chain of exactly `length` steps below `from`, in
// deterministic child order. The chain holds the cubes strictly below `from`.
void for_each_offspring_chain(const CubeTree& tree, int from, int length,
                              const std::function<void(const std::vector<ChainStep>&)>& fn);

std::vector<std::vector<ChainStep>> offspring_chains(const CubeTree& tree, int from, int length);

}  // namespace cubedim
