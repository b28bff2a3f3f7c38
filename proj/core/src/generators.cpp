#include "cubedim/generators.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace cubedim {

void TreeSpec::validate() const {
  if (types.empty()) fail(Errc::InvalidParams, "spec has no types");
  if (root < 0 || root >= static_cast<int>(types.size()))
    fail(Errc::InvalidParams, "root type out of range");
  if (num_slots < 1) fail(Errc::InvalidParams, "need at least one central slot");
  if (!(delta > 0 && delta < 1)) fail(Errc::DeltaOutOfRange, "delta must lie in (0,1)");
  if (!relaxed_delta && !(delta * 7 < 1))
    fail(Errc::DeltaOutOfRange,
         "delta must lie in (0,1/7); pass the relaxation flag for reference constructions");

  for (std::size_t t = 0; t < types.size(); ++t) {
    const auto& ty = types[t];
    if (ty.children.empty())
      fail(Errc::InvalidParams, "type " + std::to_string(t) + " has no children");
    std::vector<char> slot_seen(num_slots + 1, 0);
    int centrals = 0;
    for (const auto& c : ty.children) {
      if (c.type < 0 || c.type >= static_cast<int>(types.size()))
        fail(Errc::InvalidParams, "child type out of range in type " + std::to_string(t));
      if (c.slot < 0 || c.slot > num_slots)
        fail(Errc::InvalidParams, "slot index out of range in type " + std::to_string(t));
      if (c.slot > 0) {
        if (slot_seen[c.slot])
          fail(Errc::InvalidParams, "duplicate central slot in type " + std::to_string(t));
        slot_seen[c.slot] = 1;
        ++centrals;
      }
    }
    if (centrals != num_slots)
      fail(Errc::InvalidParams, "type " + std::to_string(t) + " must have exactly " +
                                    std::to_string(num_slots) + " central slots");
  }

  if (reachable_types().size() != types.size())
    fail(Errc::InvalidParams, "not all types are reachable from the root type");
}

int TreeSpec::branching(int type) const { return static_cast<int>(types[type].children.size()); }

int TreeSpec::max_branching() const {
  int m = 0;
  for (const auto& t : types) m = std::max<int>(m, static_cast<int>(t.children.size()));
  return m;
}

std::vector<int> TreeSpec::reachable_types() const {
  std::vector<char> seen(types.size(), 0);
  std::vector<int> stack{root}, out;
  seen[root] = 1;
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    out.push_back(t);
    for (const auto& c : types[t].children) {
      if (!seen[c.type]) {
        seen[c.type] = 1;
        stack.push_back(c.type);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TreeSpec TreeSpec::canonical() const {
  TreeSpec out = *this;
  for (auto& t : out.types) {
    std::stable_sort(t.children.begin(), t.children.end(), [](const SpecChild& a, const SpecChild& b) {
      if ((a.slot > 0) != (b.slot > 0)) return a.slot > 0;  // central slots first
      if (a.slot != b.slot) return a.slot < b.slot;
      return a.type < b.type;
    });
  }
  return out;
}

bool structurally_equal(const TreeSpec& a, const TreeSpec& b) {
  const TreeSpec ca = a.canonical(), cb = b.canonical();
  if (ca.delta != cb.delta || ca.root != cb.root || ca.num_slots != cb.num_slots ||
      ca.types.size() != cb.types.size())
    return false;
  for (std::size_t t = 0; t < ca.types.size(); ++t) {
    const auto& x = ca.types[t].children;
    const auto& y = cb.types[t].children;
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].type != y[i].type || x[i].slot != y[i].slot) return false;
  }
  return true;
}

TreeSpec triadic_spec() {
  TreeSpec spec;
  spec.delta = Rational(1, 3);
  spec.relaxed_delta = true;
  spec.num_slots = 1;
  SpecType t;
  t.children = {{0, 0}, {0, 1}, {0, 0}};
  spec.types = {t};
  spec.validate();
  return spec;
}

TreeSpec uniform_spec(int branching, const Rational& delta, int num_slots, bool relax_delta) {
  if (branching < 1 || num_slots < 1 || num_slots > branching)
    fail(Errc::InvalidParams, "need 1 <= J <= M");
  TreeSpec spec;
  spec.delta = delta;
  spec.relaxed_delta = relax_delta;
  spec.num_slots = num_slots;
  SpecType t;
  for (int j = 1; j <= num_slots; ++j) t.children.push_back({0, j});
  for (int j = num_slots; j < branching; ++j) t.children.push_back({0, 0});
  spec.types = {t};
  spec.validate();
  return spec;
}

TreeSpec boundary_rich_spec(int beta_num, int beta_den, int branching, const Rational& delta,
                            bool relax_delta) {
  if (beta_num < 1 || beta_den < beta_num)
    fail(Errc::InvalidParams, "need 0 < beta_num <= beta_den");
  if (branching < 2)
    fail(Errc::InvalidParams, "boundary steps need branching >= 2");
  TreeSpec spec;
  spec.delta = delta;
  spec.relaxed_delta = relax_delta;
  spec.num_slots = 1;
  spec.types.resize(beta_den);
  for (int i = 0; i < beta_den; ++i) {
    const int next = (i + 1) % beta_den;
    SpecType t;
    t.children.push_back({next, 1});
    if (i < beta_num)
      for (int b = 1; b < branching; ++b) t.children.push_back({next, 0});
    spec.types[i] = t;
  }
  spec.root = 0;
  spec.validate();
  return spec;
}

FiniteMetricSpace cantor_points(int depth) {
  if (depth < 0) fail(Errc::InvalidParams, "depth must be non-negative");
  if (depth > 12) fail(Errc::TooDeep, "cantor_points is capped at depth 12");
  // Left endpoints k/3^depth with digits in {0,2}, exact until the single
  // rounding into double coordinates.
  std::vector<BigInt> numerators{BigInt(0)};
  for (int level = 0; level < depth; ++level) {
    std::vector<BigInt> next;
    next.reserve(numerators.size() * 2);
    const BigInt shift = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(depth - 1 - level)) * 2;
    for (const auto& k : numerators) {
      next.push_back(k);
      next.push_back(k + shift);
    }
    numerators = std::move(next);
  }
  std::sort(numerators.begin(), numerators.end());
  const double denom = std::pow(3.0, depth);  // exact in double up to 3^12
  std::vector<std::string> ids;
  std::vector<std::vector<double>> coords;
  ids.reserve(numerators.size());
  coords.reserve(numerators.size());
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    ids.push_back(std::to_string(i));
    coords.push_back({numerators[i].convert_to<double>() / denom});
  }
  return FiniteMetricSpace::from_coordinates(std::move(ids), std::move(coords));
}

FiniteMetricSpace grid_points(int dim, int side, CoordMetric metric) {
  if (dim < 1 || side < 1) fail(Errc::InvalidParams, "need dim >= 1 and side >= 1");
  double count = 1;
  for (int k = 0; k < dim; ++k) count *= side;
  if (count > 1e5) fail(Errc::TooLarge, "grid exceeds the 1e5 point cap");
  const long n = static_cast<long>(count);
  const double denom = side > 1 ? static_cast<double>(side - 1) : 1.0;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> coords;
  ids.reserve(n);
  coords.reserve(n);
  std::vector<int> idx(dim, 0);
  for (long i = 0; i < n; ++i) {
    ids.push_back(std::to_string(i));
    std::vector<double> row(dim);
    for (int k = 0; k < dim; ++k) row[k] = idx[k] / denom;
    coords.push_back(std::move(row));
    for (int k = dim - 1; k >= 0; --k) {
      if (++idx[k] < side) break;
      idx[k] = 0;
    }
  }
  return FiniteMetricSpace::from_coordinates(std::move(ids), std::move(coords), metric);
}

FiniteMetricSpace random_points(int dim, int count, std::uint64_t seed, CoordMetric metric) {
  if (dim < 1 || count < 1) fail(Errc::InvalidParams, "need dim >= 1 and count >= 1");
  if (count > 10000) fail(Errc::TooLarge, "random_points is capped at 1e4 points");
  std::mt19937_64 rng(seed);
  std::vector<std::string> ids;
  std::vector<std::vector<double>> coords;
  ids.reserve(count);
  coords.reserve(count);
  for (int i = 0; i < count; ++i) {
    ids.push_back(std::to_string(i));
    std::vector<double> row(dim);
    // fixed 53-bit mapping; identical across platforms for identical seeds
    for (int k = 0; k < dim; ++k) row[k] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    coords.push_back(std::move(row));
  }
  return FiniteMetricSpace::from_coordinates(std::move(ids), std::move(coords), metric);
}

}  // namespace cubedim
