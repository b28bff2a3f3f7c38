#include "cubedim/cubes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace cubedim {

const char* to_string(CubeKind k) {
  switch (k) {
    case CubeKind::root: return "root";
    case CubeKind::central: return "central";
    case CubeKind::boundary: return "boundary";
  }
  return "root";
}

const char* to_string(TreeSource s) { return s == TreeSource::metric ? "metric" : "spec"; }

int CubeTree::max_branching() const {
  int m = 0;
  for (const auto& c : cubes)
    m = std::max<int>(m, static_cast<int>(c.children.size()));
  return m;
}

int max_branching(const CubeTree& tree) { return tree.max_branching(); }

namespace {

double delta_power(const Rational& delta, int k) {
  return pow_rational(delta, k).convert_to<double>();
}

}  // namespace

CubeTree build_cube_tree(const FiniteMetricSpace& space, const Rational& delta, int num_levels,
                         int origin) {
  if (!(delta > 0) || !(delta * 7 < 1))
    fail(Errc::DeltaOutOfRange, "metric cube trees need delta in (0,1/7)");
  if (num_levels < 1) fail(Errc::InvalidParams, "need at least one level");
  if (origin < 0 || origin >= space.size()) fail(Errc::InvalidParams, "origin not in the space");

  CubeTree tree;
  tree.source = TreeSource::metric;
  tree.delta = delta;
  tree.num_levels = num_levels;
  tree.origin = origin;
  tree.scale = space.diameter() > 0 ? space.diameter() : 1.0;
  tree.point_ids = space.ids();

  const int n = space.size();
  std::vector<int> all_points(n);
  std::iota(all_points.begin(), all_points.end(), 0);

  // Nested nets, seeded by the previous net so centers persist and the
  // origin is the first net point at every level.
  std::vector<std::vector<int>> nets(num_levels + 1);
  nets[0] = greedy_net(space, all_points, delta_power(delta, 0) * tree.scale, {origin});
  for (int k = 1; k <= num_levels; ++k)
    nets[k] = greedy_net(space, all_points, delta_power(delta, k) * tree.scale, nets[k - 1]);

  if (space.min_positive_distance() > 0) {
    for (int k = 1; k <= num_levels; ++k) {
      if (delta_power(delta, k) * tree.scale < space.min_positive_distance()) {
        tree.vacuous_from = k;
        break;
      }
    }
  }

  // nets in ascending point order, so strict-improvement scans break ties by id
  std::vector<std::vector<int>> sorted_nets(nets);
  for (auto& net : sorted_nets) std::sort(net.begin(), net.end());
  auto nearest = [&](int level, int point) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c : sorted_nets[level]) {
      const double d = space.distance(point, c);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  };

  // cube ids per level, keyed by center
  tree.level_cubes.assign(num_levels + 1, {});
  std::vector<std::map<int, int>> cube_of_center(num_levels + 1);
  for (int k = 0; k <= num_levels; ++k) {
    for (int c : nets[k]) {
      Cube cube;
      cube.id = static_cast<int>(tree.cubes.size());
      cube.level = k;
      cube.center = c;
      tree.level_cubes[k].push_back(cube.id);
      cube_of_center[k][c] = cube.id;
      tree.cubes.push_back(std::move(cube));
    }
  }

  // parent attachment for centers
  for (int k = 1; k <= num_levels; ++k) {
    for (int c : nets[k]) {
      const int parent_center = nearest(k - 1, c);
      const int cube_id = cube_of_center[k][c];
      const int parent_id = cube_of_center[k - 1][parent_center];
      Cube& cube = tree.cubes[cube_id];
      cube.parent = parent_id;
      cube.kind = (parent_center == c) ? CubeKind::central : CubeKind::boundary;
      cube.slot = (parent_center == c) ? 1 : 0;
      tree.cubes[parent_id].children.push_back(cube_id);
    }
  }

  // point attachment at the deepest level, then membership propagates up
  for (int p = 0; p < n; ++p) {
    const int leaf_center = nearest(num_levels, p);
    int cube_id = cube_of_center[num_levels][leaf_center];
    tree.cubes[cube_id].members.push_back(p);
    while (tree.cubes[cube_id].parent >= 0) {
      cube_id = tree.cubes[cube_id].parent;
      tree.cubes[cube_id].members.push_back(p);
    }
  }
  for (auto& cube : tree.cubes) std::sort(cube.members.begin(), cube.members.end());

  const TreeValidation check = validate_tree(tree, &space);
  for (const auto& prop : check.properties) {
    if (!prop.pass) {
      const std::string witness = prop.witnesses.empty() ? "" : (": " + prop.witnesses.front());
      if (prop.property == "sandwich")
        fail(Errc::SandwichViolation, "ball sandwich failed" + witness);
      fail(Errc::StructureError, "property '" + prop.property + "' failed" + witness);
    }
  }
  return tree;
}

CubeTree unfold_spec(const TreeSpec& spec, int depth) {
  spec.validate();
  if (depth < 0) fail(Errc::InvalidParams, "depth must be non-negative");

  // exact cube count before materializing
  {
    std::vector<BigInt> level_count(spec.types.size(), 0);
    level_count[spec.root] = 1;
    BigInt total = 1;
    for (int k = 0; k < depth; ++k) {
      std::vector<BigInt> next(spec.types.size(), 0);
      for (std::size_t t = 0; t < spec.types.size(); ++t) {
        if (level_count[t] == 0) continue;
        for (const auto& c : spec.types[t].children) next[c.type] += level_count[t];
      }
      level_count = std::move(next);
      for (const auto& v : level_count) total += v;
      if (total > 10000000) fail(Errc::TooLarge, "unfolding exceeds the 1e7 cube cap");
    }
  }

  CubeTree tree;
  tree.source = TreeSource::spec;
  tree.delta = spec.delta;
  tree.num_levels = depth;
  tree.num_slots = spec.num_slots;
  tree.level_cubes.assign(depth + 1, {});

  Cube root;
  root.id = 0;
  root.type = spec.root;
  tree.cubes.push_back(root);
  tree.level_cubes[0].push_back(0);

  for (int k = 0; k < depth; ++k) {
    for (int parent_id : tree.level_cubes[k]) {
      const int parent_type = tree.cubes[parent_id].type;
      for (const auto& child : spec.types[parent_type].children) {
        Cube cube;
        cube.id = static_cast<int>(tree.cubes.size());
        cube.level = k + 1;
        cube.parent = parent_id;
        cube.type = child.type;
        cube.kind = child.central() ? CubeKind::central : CubeKind::boundary;
        cube.slot = child.slot;
        tree.cubes[parent_id].children.push_back(cube.id);
        tree.level_cubes[k + 1].push_back(cube.id);
        tree.cubes.push_back(std::move(cube));
      }
    }
  }
  return tree;
}

namespace {

void check_structure(const CubeTree& tree, PropertyCheck& nesting) {
  for (const auto& cube : tree.cubes) {
    if (cube.level > 0 && cube.parent < 0) {
      nesting.pass = false;
      nesting.witnesses.push_back("cube " + std::to_string(cube.id) + " at level " +
                                  std::to_string(cube.level) + " has no parent");
    }
    if (cube.parent >= 0 && tree.cubes[cube.parent].level != cube.level - 1) {
      nesting.pass = false;
      nesting.witnesses.push_back("cube " + std::to_string(cube.id) + " skips a level");
    }
    for (int ch : cube.children) {
      if (tree.cubes[ch].parent != cube.id) {
        nesting.pass = false;
        nesting.witnesses.push_back("child link mismatch at cube " + std::to_string(cube.id));
      }
    }
  }
}

}  // namespace

const PropertyCheck* TreeValidation::find(const std::string& name) const {
  for (const auto& p : properties)
    if (p.property == name) return &p;
  return nullptr;
}

TreeValidation validate_tree(const CubeTree& tree, const FiniteMetricSpace* space) {
  const bool metric = tree.source == TreeSource::metric;
  if (metric && space == nullptr)
    fail(Errc::SourceMismatch, "metric-sourced tree needs its space for validation");
  if (!metric && space != nullptr)
    fail(Errc::SourceMismatch, "spec-sourced trees are validated without a space");
  if (metric && space->ids() != tree.point_ids)
    fail(Errc::SourceMismatch, "space ids do not match the tree's point ids");

  TreeValidation out;
  PropertyCheck partition{"partition"};
  PropertyCheck nesting{"nesting"};
  PropertyCheck sandwich{"sandwich"};
  PropertyCheck origin_prop{"origin"};
  PropertyCheck persistence{"center_persistence"};
  PropertyCheck central_children{"central_children"};

  auto witness = [](PropertyCheck& p, std::string text) {
    p.pass = false;
    if (p.witnesses.size() < 100) p.witnesses.push_back(std::move(text));
  };

  check_structure(tree, nesting);

  if (metric) {
    const int n = space->size();
    // (i) members partition the point set at every level
    for (int k = 0; k <= tree.num_levels; ++k) {
      std::vector<int> owner(n, -1);
      for (int id : tree.level_cubes[k]) {
        for (int p : tree.cubes[id].members) {
          if (owner[p] >= 0)
            witness(partition, "point " + space->id(p) + " lies in cubes " +
                                   std::to_string(owner[p]) + " and " + std::to_string(id) +
                                   " at level " + std::to_string(k));
          owner[p] = id;
        }
      }
      for (int p = 0; p < n; ++p)
        if (owner[p] < 0)
          witness(partition,
                  "point " + space->id(p) + " is uncovered at level " + std::to_string(k));
    }

    // (ii) each cube is the disjoint union of its children
    for (const auto& cube : tree.cubes) {
      if (cube.level == tree.num_levels) continue;
      std::vector<int> merged;
      for (int ch : cube.children)
        merged.insert(merged.end(), tree.cubes[ch].members.begin(), tree.cubes[ch].members.end());
      std::sort(merged.begin(), merged.end());
      if (merged != cube.members)
        witness(nesting, "cube " + std::to_string(cube.id) +
                             " is not the disjoint union of its children");
    }

    // (iii) ball sandwich with constants 1/3 and 2, at normalized scale
    for (const auto& cube : tree.cubes) {
      const double dk = delta_power(tree.delta, cube.level) * tree.scale;
      const double inner = dk / 3.0, outer = 2.0 * dk;
      for (int p : cube.members) {
        if (!space->leq(space->distance(cube.center, p), outer)) {
          witness(sandwich, "cube " + std::to_string(cube.id) + ": member " + space->id(p) +
                                " lies outside B(center, 2 delta^k)");
        }
      }
      // inner ball must be contained in the member set
      std::vector<char> is_member(n, 0);
      for (int p : cube.members) is_member[p] = 1;
      for (int p = 0; p < n; ++p) {
        if (space->leq(space->distance(cube.center, p), inner) && !is_member[p]) {
          witness(sandwich, "cube " + std::to_string(cube.id) + ": point " + space->id(p) +
                                " in B(center, delta^k/3) is not a member");
        }
      }
    }

    // (iv) the origin is a center at every level and lies in a level-0 cube
    for (int k = 0; k <= tree.num_levels; ++k) {
      bool found = false;
      for (int id : tree.level_cubes[k])
        if (tree.cubes[id].center == tree.origin) found = true;
      if (!found)
        witness(origin_prop, "origin is not a center at level " + std::to_string(k));
    }
    {
      bool in_top = false;
      for (int id : tree.level_cubes[0]) {
        const auto& m = tree.cubes[id].members;
        if (std::binary_search(m.begin(), m.end(), tree.origin)) in_top = true;
      }
      if (!in_top) witness(origin_prop, "no level-0 cube contains the origin");
    }

    // (v) centers at level k persist to level k+1
    for (int k = 0; k < tree.num_levels; ++k) {
      std::vector<char> next_centers(n, 0);
      for (int id : tree.level_cubes[k + 1]) next_centers[tree.cubes[id].center] = 1;
      for (int id : tree.level_cubes[k]) {
        if (!next_centers[tree.cubes[id].center])
          witness(persistence, "center " + space->id(tree.cubes[id].center) +
                                   " vanishes after level " + std::to_string(k));
      }
    }

    // kind/central-child consistency
    for (const auto& cube : tree.cubes) {
      if (cube.parent >= 0) {
        const bool same_center = tree.cubes[cube.parent].center == cube.center;
        if (same_center != (cube.kind == CubeKind::central))
          witness(central_children,
                  "cube " + std::to_string(cube.id) + " kind disagrees with its center");
      }
      if (cube.level < tree.num_levels) {
        int centrals = 0;
        for (int ch : cube.children)
          if (tree.cubes[ch].kind == CubeKind::central) ++centrals;
        if (centrals != 1)
          witness(central_children, "cube " + std::to_string(cube.id) + " has " +
                                        std::to_string(centrals) + " central children");
      }
    }
  } else {
    sandwich.checked = false;  // combinatorial trees carry no metric

    // (i)/(ii): proper tree with all leaves at the deepest level
    for (const auto& cube : tree.cubes) {
      if (cube.level < tree.num_levels && cube.children.empty())
        witness(partition,
                "cube " + std::to_string(cube.id) + " ends above the deepest level");
    }

    // (iv) a slot-1 central chain from the root reaches every level
    {
      int at = tree.root_id();
      for (int k = 0; k < tree.num_levels; ++k) {
        int next = -1;
        for (int ch : tree.cubes[at].children)
          if (tree.cubes[ch].slot == 1) next = ch;
        if (next < 0) {
          witness(origin_prop, "central chain breaks at cube " + std::to_string(at));
          break;
        }
        at = next;
      }
    }

    // (v)/(vi): every non-leaf carries exactly the spec's central slots
    for (const auto& cube : tree.cubes) {
      if (cube.level == tree.num_levels) continue;
      std::vector<char> slot_seen(tree.num_slots + 1, 0);
      int centrals = 0;
      for (int ch : cube.children) {
        const auto& c = tree.cubes[ch];
        if ((c.slot > 0) != (c.kind == CubeKind::central))
          witness(central_children, "cube " + std::to_string(ch) + " slot/kind mismatch");
        if (c.slot > 0) {
          ++centrals;
          if (c.slot > tree.num_slots || slot_seen[c.slot])
            witness(central_children,
                    "cube " + std::to_string(cube.id) + " has duplicate slot children");
          else
            slot_seen[c.slot] = 1;
        }
      }
      if (centrals != tree.num_slots)
        witness(persistence, "cube " + std::to_string(cube.id) + " has " +
                                 std::to_string(centrals) + " central children, expected " +
                                 std::to_string(tree.num_slots));
    }
  }

  out.properties = {partition, nesting, sandwich, origin_prop, persistence, central_children};
  for (const auto& p : out.properties)
    if (p.checked && !p.pass) out.pass = false;
  return out;
}

void for_each_offspring_chain(const CubeTree& tree, int from, int length,
                              const std::function<void(const std::vector<ChainStep>&)>& fn) {
  if (from < 0 || from >= static_cast<int>(tree.cubes.size()))
    fail(Errc::InvalidParams, "chain start cube does not exist");
  if (length < 1) fail(Errc::InvalidParams, "chain length must be positive");
  if (tree.cubes[from].level + length > tree.num_levels)
    fail(Errc::DepthExceeded, "chain length exceeds the remaining depth");

  std::vector<ChainStep> chain(length);
  // deterministic depth-first walk in child order
  std::function<void(int, int)> walk = [&](int cube, int step) {
    if (step == length) {
      fn(chain);
      return;
    }
    for (int ch : tree.cubes[cube].children) {
      chain[step] = {ch, tree.cubes[ch].kind, tree.cubes[ch].slot};
      walk(ch, step + 1);
    }
  };
  walk(from, 0);
}

std::vector<std::vector<ChainStep>> offspring_chains(const CubeTree& tree, int from, int length) {
  std::vector<std::vector<ChainStep>> out;
  for_each_offspring_chain(tree, from, length, [&](const std::vector<ChainStep>& c) { out.push_back(c); });
  return out;
}

}  // namespace cubedim
