#include "cubedim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cubedim/mean_cycle.hpp"

namespace cubedim {

namespace {

double log_delta(const Rational& x, const Rational& delta) {
  return log_rational(x) / log_rational(delta);
}

std::vector<Rational> uniform_eta(int num_slots) {
  return std::vector<Rational>(num_slots, Rational(1, num_slots));
}

}  // namespace

double continuity_modulus(Rational p, Rational p2, int branching, const Rational& delta) {
  if (p > p2) std::swap(p, p2);
  if (!(p > 0)) fail(Errc::ParamsOutOfRange, "p must be positive");
  if (!(delta > 0 && delta < 1)) fail(Errc::ParamsOutOfRange, "delta must lie in (0,1)");
  if (branching < 1) fail(Errc::ParamsOutOfRange, "branching must be at least 1");
  const Rational central_p = Rational(1) - Rational(branching - 1) * p;
  const Rational central_p2 = Rational(1) - Rational(branching - 1) * p2;
  if (!(central_p2 > 0))
    fail(Errc::ParamsOutOfRange, "1 - (M-1) p2 must stay positive");
  const double first = log_delta(p, delta) - log_delta(p2, delta);
  const double second = log_delta(central_p2, delta) - log_delta(central_p, delta);
  return std::max(first, second);
}

KeyEstimateResult check_key_estimate(const CubeTree& tree, const Rational& p_in,
                                     const Rational& p2_in) {
  Rational p = p_in, p2 = p2_in;
  if (p > p2) std::swap(p, p2);
  const int branching = tree.max_branching();

  const std::vector<Rational> eta = uniform_eta(tree.num_slots);
  const MassAssignment mu_p = build_mu_p_eta(tree, p, eta);
  const MassAssignment mu_p2 = build_mu_p_eta(tree, p2, eta);

  KeyEstimateResult out;
  out.epsilon = continuity_modulus(p, p2, branching, tree.delta);
  out.worst_slack = std::numeric_limits<double>::infinity();

  // delta^(eps N) = min(p/p2, (1-(M-1)p2)/(1-(M-1)p))^N, an exact rational
  const Rational ratio_a = p / p2;
  const Rational ratio_b = (Rational(1) - Rational(branching - 1) * p2) /
                           (Rational(1) - Rational(branching - 1) * p);
  const Rational base = std::min(ratio_a, ratio_b);

  std::vector<Rational> bound(tree.depth() + 1);
  bound[0] = 1;
  for (int n = 1; n <= tree.depth(); ++n) bound[n] = bound[n - 1] * base;

  for (const auto& cube : tree.cubes) {
    if (cube.level == 0) continue;
    int anc = cube.id;
    for (int gap = 1; gap <= cube.level; ++gap) {
      anc = tree.cubes[anc].parent;
      // RR = [mu_p(Q')/mu_p(Q)] / [mu_p2(Q')/mu_p2(Q)]
      const Rational rr = (mu_p.masses[cube.id] * mu_p2.masses[anc]) /
                          (mu_p.masses[anc] * mu_p2.masses[cube.id]);
      ++out.chains_checked;
      const bool ok = rr >= bound[gap] && rr * bound[gap] <= 1;
      double slack;
      if (base == 1) {
        slack = 0.0;  // p == p2, bounds and ratio are all 1
      } else {
        const double log_rr = log_rational(rr);
        const double log_bound = static_cast<double>(gap) * log_rational(base);
        slack = std::min(log_rr - log_bound, -log_bound - log_rr);
      }
      if (!ok) out.pass = false;
      if (slack < out.worst_slack || !ok) {
        out.worst_slack = slack;
        out.worst_from = anc;
        out.worst_to = cube.id;
      }
    }
  }

  if (out.worst_to >= 0) {
    // reconstruct the worst chain, ancestor first
    std::vector<int> rev;
    int at = out.worst_to;
    while (at != out.worst_from) {
      rev.push_back(at);
      at = tree.cubes[at].parent;
    }
    std::reverse(rev.begin(), rev.end());
    out.worst_chain.chain = rev;
    for (std::size_t i = 0; i < rev.size(); ++i)
      if (tree.cubes[rev[i]].kind == CubeKind::boundary)
        out.worst_chain.boundary_steps.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

ContinuityReport dimension_continuity_check(
    const TreeSpec& spec, const std::vector<std::pair<Rational, Rational>>& pairs) {
  spec.validate();
  const std::vector<Rational> eta = uniform_eta(spec.num_slots);
  const int branching = spec.max_branching();

  ContinuityReport report;
  for (const auto& [p_in, p2_in] : pairs) {
    Rational p = p_in, p2 = p2_in;
    if (p > p2) std::swap(p, p2);
    ContinuityRow row;
    row.p = p;
    row.p2 = p2;
    row.modulus = continuity_modulus(p, p2, branching, spec.delta);
    row.gap_assouad =
        std::fabs(exact_dimension_spec(spec, p, eta, DimKind::measure_assouad).value() -
                  exact_dimension_spec(spec, p2, eta, DimKind::measure_assouad).value());
    row.gap_lower =
        std::fabs(exact_dimension_spec(spec, p, eta, DimKind::measure_lower).value() -
                  exact_dimension_spec(spec, p2, eta, DimKind::measure_lower).value());
    row.pass = row.gap_assouad <= row.modulus + 1e-12 && row.gap_lower <= row.modulus + 1e-12;
    if (!row.pass) report.pass = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

BoundaryChainResult boundary_chain_search(const CubeTree& tree, int length) {
  if (length < 1) fail(Errc::InvalidParams, "chain length must be positive");
  if (length > tree.depth()) fail(Errc::DepthExceeded, "chain length exceeds the tree depth");

  // best boundary count achievable below each cube, bottom-up over levels
  std::vector<int> best(tree.cubes.size(), 0), pick(tree.cubes.size(), -1);
  for (int level = length - 1; level >= 0; --level) {
    for (int id : tree.level_cubes[level]) {
      const Cube& cube = tree.cubes[id];
      int best_count = -1, best_child = -1;
      for (int ch : cube.children) {
        const int count = (tree.cubes[ch].kind == CubeKind::boundary ? 1 : 0) +
                          (level + 1 < length ? best[ch] : 0);
        if (count > best_count || (count == best_count && ch < best_child)) {
          best_count = count;
          best_child = ch;
        }
      }
      best[id] = best_count;
      pick[id] = best_child;
    }
  }

  BoundaryChainResult out;
  int at = tree.root_id();
  for (int step = 1; step <= length; ++step) {
    at = pick[at];
    out.profile.chain.push_back(at);
    if (tree.cubes[at].kind == CubeKind::boundary) out.profile.boundary_steps.push_back(step);
  }
  out.fraction = Rational(static_cast<long>(out.profile.boundary_steps.size()), length);
  return out;
}

BinomBoundResult binom_bound_check(const TreeSpec& spec, const Rational& beta, int depth) {
  spec.validate();
  if (beta < 0 || beta > 1) fail(Errc::InvalidParams, "beta must lie in [0,1]");
  if (depth < 1) fail(Errc::InvalidParams, "depth must be positive");

  // enumeration size guard
  {
    std::vector<BigInt> level_count(spec.types.size(), 0);
    level_count[spec.root] = 1;
    BigInt nodes = 1;
    for (int k = 0; k < depth; ++k) {
      std::vector<BigInt> next(spec.types.size(), 0);
      for (std::size_t t = 0; t < spec.types.size(); ++t)
        for (const auto& c : spec.types[t].children) next[c.type] += level_count[t];
      level_count = std::move(next);
      for (const auto& v : level_count) nodes += v;
      if (nodes > 50000000) fail(Errc::TooLarge, "enumeration exceeds the 5e7 node budget");
    }
  }

  BinomBoundResult out;
  const Rational cap_rational = beta * depth;
  out.cap = (numerator(cap_rational) / denominator(cap_rational)).convert_to<long>();

  std::uint64_t total = 0, admissible = 0;
  long max_boundary = 0;
  // literal walk over every depth-N chain
  struct Frame {
    int type;
    int level;
    int boundary;
  };
  std::vector<Frame> dfs{{spec.root, 0, 0}};
  while (!dfs.empty()) {
    const Frame f = dfs.back();
    dfs.pop_back();
    if (f.level == depth) {
      ++total;
      max_boundary = std::max<long>(max_boundary, f.boundary);
      if (f.boundary <= out.cap) ++admissible;
      continue;
    }
    for (const auto& c : spec.types[f.type].children)
      dfs.push_back({c.type, f.level + 1, f.boundary + (c.central() ? 0 : 1)});
  }

  out.total = total;
  out.admissible = admissible;
  out.max_boundary_steps = max_boundary;
  out.hypothesis_holds = max_boundary <= out.cap;

  // binom(N, cap) * M^(beta N); exact when beta N is an integer
  BigInt binom = 1;
  for (long i = 0; i < out.cap; ++i) {
    binom *= (depth - i);
    binom /= (i + 1);
  }
  const int branching = spec.max_branching();
  if (denominator(cap_rational) == 1) {
    const BigInt exact_bound =
        binom * boost::multiprecision::pow(BigInt(branching), static_cast<unsigned>(out.cap));
    out.bound = exact_bound.convert_to<double>();
    out.pass = out.admissible <= exact_bound;
  } else {
    out.bound = binom.convert_to<double>() *
                std::exp(cap_rational.convert_to<double>() * std::log(branching));
    out.pass = admissible <= out.bound * (1 + 1e-12);
  }
  return out;
}

double kappa(double beta, const Rational& delta) {
  if (!(beta >= 0.0 && beta <= 1.0)) fail(Errc::InvalidParams, "beta must lie in [0,1]");
  if (!(delta > 0 && delta < 1)) fail(Errc::ParamsOutOfRange, "delta must lie in (0,1)");
  auto xlogx = [](double x) { return x > 0 ? x * std::log(x) : 0.0; };
  const double entropy = -xlogx(beta) - xlogx(1.0 - beta);
  return entropy / -log_rational(delta);
}

BlowupReport blowup_check(const TreeSpec& spec, const std::vector<Rational>& p_list) {
  spec.validate();

  // beta_hat: maximal per-cycle boundary fraction, an exact additive mean cycle
  const std::vector<int> reachable = spec.reachable_types();
  std::vector<int> local(spec.types.size(), -1);
  for (std::size_t i = 0; i < reachable.size(); ++i) local[reachable[i]] = static_cast<int>(i);
  std::vector<MeanCycleEdge> edges;
  for (int t : reachable)
    for (const auto& c : spec.types[t].children)
      edges.push_back({local[t], local[c.type], Rational(c.central() ? 0 : 1), -1});
  const MeanCycleResult cycle =
      optimal_mean_cycle(static_cast<int>(reachable.size()), edges, MeanMode::additive, true);
  if (!cycle.found) fail(Errc::InvalidParams, "type graph has no cycle");

  BlowupReport report;
  report.beta_hat = cycle.weight / cycle.length;
  report.applicable = report.beta_hat > 0;
  if (!report.applicable) {
    report.diverging = true;
    return report;  // bound is trivial for boundary-free specs
  }

  const std::vector<Rational> eta = uniform_eta(spec.num_slots);
  const BigInt beta_num = numerator(report.beta_hat);
  const BigInt beta_den = denominator(report.beta_hat);

  ExactDimension prev;
  bool have_prev = false;
  Rational prev_p;
  for (const auto& p : p_list) {
    const ExactDimension dim = exact_dimension_spec(spec, p, eta, DimKind::measure_assouad);
    BlowupRow row;
    row.p = p;
    row.value = dim.value();
    row.lower_bound = report.beta_hat.convert_to<double>() * log_delta(p, spec.delta);
    // value >= beta_hat log_delta p  <=>  ratio^v >= (1/p)^(u * length), exact
    const Rational lhs = pow_rational(dim.ratio, beta_den.convert_to<long>());
    const Rational rhs =
        pow_rational(Rational(1) / p, beta_num.convert_to<long>() * dim.length);
    row.pass = lhs >= rhs;
    if (!row.pass) report.pass = false;

    if (have_prev && p < prev_p) {
      // divergence along the decreasing p list, compared exactly
      if (compare_log_mean(dim.ratio, dim.length, prev.ratio, prev.length) <= 0)
        report.diverging = false;
    }
    prev = dim;
    prev_p = p;
    have_prev = true;
    report.rows.push_back(std::move(row));
  }
  if (!report.diverging) report.pass = false;
  return report;
}

namespace {

struct LowerPathPoint {
  Rational p;
  std::vector<Rational> eta;
};

// p = u p_max and eta = (1-u) e_1 + u uniform, with weights floored at 1e-9
// so every slot keeps positive mass.
LowerPathPoint lower_path_point(const Rational& u, const Rational& p_max, int num_slots) {
  LowerPathPoint out;
  out.p = u * p_max;
  out.eta.assign(num_slots, u / num_slots);
  out.eta[0] += Rational(1) - u;
  const Rational floor_value(1, 1000000000);
  Rational sum = 0;
  for (auto& e : out.eta) {
    if (e < floor_value) e = floor_value;
    sum += e;
  }
  for (auto& e : out.eta) e /= sum;
  return out;
}

}  // namespace

SolveResult ivp_solve(const TreeSpec& spec, double target, DimKind kind, double tol) {
  spec.validate();
  if (kind != DimKind::measure_assouad && kind != DimKind::measure_lower)
    fail(Errc::InvalidParams, "the solver targets measure dimensions");
  if (!(tol > 0)) fail(Errc::InvalidParams, "tolerance must be positive");

  const bool assouad = kind == DimKind::measure_assouad;
  const int num_slots = spec.num_slots;
  const Rational p_max(1, spec.max_branching());
  const std::vector<Rational> eta_uniform = uniform_eta(num_slots);

  const DimKind set_kind = assouad ? DimKind::set_assouad : DimKind::set_lower;
  const double set_dim = exact_dimension_spec(spec, p_max, eta_uniform, set_kind).value();
  if (assouad && target < set_dim - 1e-9)
    fail(Errc::TargetBelowSetDimension,
         "target " + std::to_string(target) + " is below the set dimension " +
             std::to_string(set_dim));
  if (!assouad && !(target > 0)) fail(Errc::InvalidParams, "lower-kind targets must be positive");

  // The lower kind on multi-slot specs walks the path (p, eta)(u); otherwise
  // the parameter is p itself over a geometric grid in (0, 1/M].
  const bool path_mode = !assouad && num_slots > 1;

  SolveResult result;
  result.target = target;
  result.tol = tol;
  int evals = 0;

  auto evaluate = [&](const Rational& u) {
    ++evals;
    if (path_mode) {
      const LowerPathPoint pt = lower_path_point(u, p_max, num_slots);
      return exact_dimension_spec(spec, pt.p, pt.eta, kind).value();
    }
    return exact_dimension_spec(spec, u, eta_uniform, kind).value();
  };

  // geometric scan, ascending parameter; adaptively extended toward 0 until
  // the target is covered or the family's realized range stops moving
  const Rational base = path_mode ? Rational(1) : p_max;
  int max_halvings = 64;
  std::vector<Rational> grid;
  std::vector<double> values;
  double range_min = std::numeric_limits<double>::infinity();
  double range_max = -std::numeric_limits<double>::infinity();

  auto build_grid = [&](int halvings) {
    grid.clear();
    values.clear();
    Rational u = base;
    for (int i = 0; i <= halvings; ++i) {
      grid.push_back(u);
      u /= 2;
    }
    std::reverse(grid.begin(), grid.end());  // ascending
    values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      values[i] = evaluate(grid[i]);
      range_min = std::min(range_min, values[i]);
      range_max = std::max(range_max, values[i]);
    }
  };

  build_grid(max_halvings);
  // extend toward u -> 0 while the assouad values have not yet passed the target
  while (assouad && values.front() < target && max_halvings < 4096) {
    max_halvings *= 2;
    build_grid(max_halvings);
  }

  std::size_t bracket = grid.size();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if ((values[i] - target) * (values[i + 1] - target) <= 0) {
      bracket = i;
      break;
    }
  }
  result.range_min = range_min;
  result.range_max = range_max;
  if (bracket == grid.size())
    fail(Errc::TargetNotBracketed,
         "target " + std::to_string(target) + " lies outside the realized range [" +
             std::to_string(range_min) + ", " + std::to_string(range_max) + "]");

  Rational lo = grid[bracket], hi = grid[bracket + 1];
  double f_lo = values[bracket];
  Rational mid = lo;
  double f_mid = f_lo;
  for (int iter = 0; iter < 300; ++iter) {
    mid = (lo + hi) / 2;
    f_mid = evaluate(mid);
    if (std::fabs(f_mid - target) < tol / 2 && (hi - lo).convert_to<double>() < tol / 2) break;
    const bool same_side = (f_lo - target) * (f_mid - target) > 0;
    if (same_side) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  result.iterations = evals;
  result.achieved = f_mid;
  if (path_mode) {
    const LowerPathPoint pt = lower_path_point(mid, p_max, num_slots);
    result.p = pt.p;
    result.eta = pt.eta;
  } else {
    result.p = mid;
    result.eta = eta_uniform;
  }
  return result;
}

std::vector<SweepRow> sweep(const TreeSpec& spec, const std::vector<Rational>& p_grid,
                            const std::vector<Rational>& eta) {
  spec.validate();
  const std::vector<Rational> weights = eta.empty() ? uniform_eta(spec.num_slots) : eta;
  std::vector<SweepRow> rows;
  rows.reserve(p_grid.size());
  for (const auto& p : p_grid) {
    SweepRow row;
    row.p = p;
    row.assouad = exact_dimension_spec(spec, p, weights, DimKind::measure_assouad);
    row.lower = exact_dimension_spec(spec, p, weights, DimKind::measure_lower);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cubedim
