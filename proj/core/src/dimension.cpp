#include "cubedim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "cubedim/mean_cycle.hpp"

namespace cubedim {

const char* to_string(DimKind k) {
  switch (k) {
    case DimKind::set_assouad: return "set_assouad";
    case DimKind::set_lower: return "set_lower";
    case DimKind::measure_assouad: return "measure_assouad";
    case DimKind::measure_lower: return "measure_lower";
  }
  return "set_assouad";
}

const char* to_string(DimMethod m) {
  switch (m) {
    case DimMethod::chain_sup: return "chain_sup";
    case DimMethod::chain_inf: return "chain_inf";
    case DimMethod::slope_fit: return "slope_fit";
    case DimMethod::exact_cycle: return "exact_cycle";
    case DimMethod::ball_ratio: return "ball_ratio";
  }
  return "slope_fit";
}

DimKind dim_kind_from_string(const std::string& name) {
  if (name == "set_assouad" || name == "set-assouad") return DimKind::set_assouad;
  if (name == "set_lower" || name == "set-lower") return DimKind::set_lower;
  if (name == "measure_assouad" || name == "assouad") return DimKind::measure_assouad;
  if (name == "measure_lower" || name == "lower") return DimKind::measure_lower;
  fail(Errc::InvalidParams, "unknown dimension kind '" + name + "'");
}

namespace {

constexpr double kSetGridRatio = 1.0 / 3.0;  // geometric scale grid for set estimators
constexpr double kLargeRatio = 8.0;          // "large R/r" cutoff for the slope fit

struct PairStat {
  double big_r = 0, small_r = 0;
  long extreme_count = 0;  // max over centers (assouad) or min (lower)
  int extreme_center = -1;
};

std::vector<double> geometric_scales(const ScaleWindow& window, double ratio) {
  std::vector<double> scales;
  for (double s = window.r_max; s >= window.r_min * (1 - 1e-12); s *= ratio) scales.push_back(s);
  return scales;
}

std::vector<int> strided_centers(int n, long max_centers) {
  const long stride = std::max<long>(1, (n + max_centers - 1) / std::max<long>(1, max_centers));
  std::vector<int> centers;
  for (long i = 0; i < n; i += stride) centers.push_back(static_cast<int>(i));
  return centers;
}

template <typename Fn>
void run_partitioned(std::size_t jobs, unsigned threads, Fn&& fn) {
  if (threads <= 1 || jobs <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  const unsigned workers = std::min<std::size_t>(threads, jobs);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < jobs; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// least squares slope of y against x, intercept absorbed
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) return 0;
  return sxy / sxx;
}

DimensionReport set_estimate(const FiniteMetricSpace& space, const ScaleWindow& window,
                             long sample_budget, unsigned threads, bool assouad) {
  DimensionReport report;
  report.kind = assouad ? DimKind::set_assouad : DimKind::set_lower;
  report.method = DimMethod::slope_fit;
  report.window_r_min = window.r_min;
  report.window_r_max = window.r_max;
  if (sample_budget < 1) fail(Errc::InvalidParams, "sample budget must be positive");

  if (space.min_positive_distance() > 0 && window.r_min < space.min_positive_distance() / 2)
    report.flags.push_back("window-below-resolution");

  std::vector<double> scales = geometric_scales(window, kSetGridRatio);
  if (!assouad) {
    // the lower dimension only quantifies over R < diam(X)
    std::erase_if(scales, [&](double s) { return s >= space.diameter(); });
  }
  if (scales.size() < 2) {
    report.flags.push_back("degenerate-window");
    return report;
  }

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < scales.size(); ++i)
    for (std::size_t j = i + 1; j < scales.size(); ++j)
      pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));

  const long centers_per_pair = std::max<long>(1, sample_budget / static_cast<long>(pairs.size()));
  const std::vector<int> centers = strided_centers(space.size(), centers_per_pair);

  std::vector<PairStat> stats(pairs.size());
  run_partitioned(pairs.size(), threads, [&](std::size_t pi) {
    const double R = scales[pairs[pi].first];
    const double r = scales[pairs[pi].second];
    PairStat st;
    st.big_r = R;
    st.small_r = r;
    for (int x : centers) {
      const long count = covering_number(space, x, R, r, CoverMode::greedy);
      if (st.extreme_center < 0 || (assouad ? count > st.extreme_count : count < st.extreme_count)) {
        st.extreme_count = count;
        st.extreme_center = x;
      }
    }
    stats[pi] = st;
  });

  // Slope over counts anchored at the widest scale, so every fit point shares
  // the same ball geometry and only r varies. Scales within a few grid steps
  // of the data resolution saturate and are left out of the fit.
  const double fit_floor = 6.0 * space.min_positive_distance();
  bool dropped_tail = false;
  std::vector<double> xs, ys;
  for (const auto& st : stats) {
    if (st.big_r != scales.front() || st.extreme_count <= 0) continue;
    if (st.small_r < fit_floor) {
      dropped_tail = true;
      continue;
    }
    if (st.big_r / st.small_r < kLargeRatio) continue;
    xs.push_back(std::log(st.big_r / st.small_r));
    ys.push_back(std::log(static_cast<double>(st.extreme_count)));
  }
  if (dropped_tail) report.flags.push_back("fit-drops-near-resolution-scales");
  if (xs.size() < 2) {
    xs.clear();
    ys.clear();
    for (const auto& st : stats) {
      if (st.extreme_count <= 0) continue;
      xs.push_back(std::log(st.big_r / st.small_r));
      ys.push_back(std::log(static_cast<double>(st.extreme_count)));
    }
    report.flags.push_back("few-large-ratio-pairs");
  }
  report.value = std::max(0.0, ls_slope(xs, ys));

  // evidence and realized constant from the raw exponents
  std::vector<Evidence> rows;
  double constant = assouad ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& st : stats) {
    if (st.extreme_center < 0) continue;
    Evidence ev;
    ev.x = st.extreme_center;
    ev.big_r = st.big_r;
    ev.small_r = st.small_r;
    ev.scale_gap = std::lround(std::log(st.big_r / st.small_r) / std::log(1.0 / kSetGridRatio));
    ev.log_ratio = std::log(static_cast<double>(st.extreme_count));
    ev.exponent = ev.log_ratio / std::log(st.big_r / st.small_r);
    ev.descriptor = "x=" + space.id(st.extreme_center) + " R=" + std::to_string(st.big_r) +
                    " r=" + std::to_string(st.small_r) + " N=" + std::to_string(st.extreme_count);
    rows.push_back(ev);
    const double c = static_cast<double>(st.extreme_count) /
                     std::pow(st.big_r / st.small_r, report.value);
    constant = assouad ? std::max(constant, c) : std::min(constant, c);
  }
  std::sort(rows.begin(), rows.end(), [&](const Evidence& a, const Evidence& b) {
    return assouad ? a.exponent > b.exponent : a.exponent < b.exponent;
  });
  report.sup_exponent = rows.empty() ? 0 : rows.front().exponent;
  if (rows.size() > 8) rows.resize(8);
  report.evidence = std::move(rows);
  report.constant = std::isfinite(constant) ? constant : 1.0;
  return report;
}

}  // namespace

DimensionReport set_assouad_estimate(const FiniteMetricSpace& space, const ScaleWindow& window,
                                     long sample_budget, unsigned threads) {
  return set_estimate(space, window, sample_budget, threads, true);
}

DimensionReport set_lower_estimate(const FiniteMetricSpace& space, const ScaleWindow& window,
                                   long sample_budget, unsigned threads) {
  return set_estimate(space, window, sample_budget, threads, false);
}

DimensionReport measure_chain_estimate(const CubeTree& tree, const MassAssignment& mu, int m_min,
                                       DimKind kind) {
  if (kind != DimKind::measure_assouad && kind != DimKind::measure_lower)
    fail(Errc::InvalidParams, "chain estimates are measure dimensions");
  if (m_min < 1) fail(Errc::InvalidParams, "m_min must be positive");
  if (tree.depth() < m_min) fail(Errc::TreeTooShallow, "tree depth is below m_min");
  if (mu.masses.size() != tree.cubes.size())
    fail(Errc::StructureError, "mass assignment does not match the tree");
  const bool assouad = kind == DimKind::measure_assouad;

  const double log_inv_delta = -log_rational(tree.delta);

  // every ancestor-descendant pair with gap >= m_min, walking each cube's
  // ancestor line with exact ratio bookkeeping
  bool have = false;
  Rational best_ratio;
  long best_gap = 1;
  int best_from = -1, best_to = -1;
  double best_score = 0;
  for (const auto& cube : tree.cubes) {
    if (cube.level < m_min) continue;
    int anc = cube.id;
    for (int m = 1; m <= cube.level; ++m) {
      anc = tree.cubes[anc].parent;
      if (m < m_min) continue;
      const Rational ratio = mu.masses[anc] / mu.masses[cube.id];
      const double score = log_rational(ratio) / (static_cast<double>(m) * log_inv_delta);
      if (!have || (assouad ? score > best_score : score < best_score)) {
        have = true;
        best_score = score;
        best_ratio = ratio;
        best_gap = m;
        best_from = anc;
        best_to = cube.id;
      }
    }
  }
  if (!have) fail(Errc::TreeTooShallow, "no chains of the requested length");

  DimensionReport report;
  report.kind = kind;
  report.method = assouad ? DimMethod::chain_sup : DimMethod::chain_inf;
  report.value = log_rational(best_ratio) / (static_cast<double>(best_gap) * log_inv_delta);
  report.sup_exponent = report.value;
  report.constant = 1.0;
  report.depth_min = m_min;
  report.depth_max = tree.depth();
  Evidence ev;
  ev.cube_from = best_from;
  ev.cube_to = best_to;
  ev.scale_gap = best_gap;
  ev.log_ratio = log_rational(best_ratio);
  ev.exponent = report.value;
  ev.descriptor = "cubes " + std::to_string(best_from) + " > " + std::to_string(best_to) +
                  " ratio " + rational_string(best_ratio);
  report.evidence = {ev};
  return report;
}

double ExactDimension::value() const {
  return log_rational(ratio) / (static_cast<double>(length) * -log_rational(delta));
}

ExactDimension exact_dimension_spec(const TreeSpec& spec, const Rational& p,
                                    const std::vector<Rational>& eta, DimKind kind) {
  spec.validate();
  const bool measure = kind == DimKind::measure_assouad || kind == DimKind::measure_lower;
  const bool maximize = kind == DimKind::measure_assouad || kind == DimKind::set_assouad;

  std::vector<Rational> weights(eta);
  if (measure) {
    if (static_cast<int>(weights.size()) != spec.num_slots)
      fail(Errc::EtaInvalid, "eta must carry one weight per central slot");
    Rational sum = 0;
    for (const auto& e : weights) {
      if (!(e > 0)) fail(Errc::EtaInvalid, "eta entries must be positive");
      sum += e;
    }
    if (sum != 1) fail(Errc::EtaInvalid, "eta must sum to 1");
    if (!(p > 0)) fail(Errc::POutOfRange, "p must be positive");
    for (int t : spec.reachable_types()) {
      const int boundary = spec.branching(t) - spec.num_slots;
      if (!(Rational(1) - Rational(boundary) * p > 0))
        fail(Errc::POutOfRange, "central mass vanishes for type " + std::to_string(t) +
                                    " at p = " + rational_string(p));
    }
  }

  // type graph restricted to types reachable from the root
  const std::vector<int> reachable = spec.reachable_types();
  std::vector<int> local(spec.types.size(), -1);
  for (std::size_t i = 0; i < reachable.size(); ++i) local[reachable[i]] = static_cast<int>(i);

  struct EdgeInfo {
    int from_type, to_type, slot;
  };
  std::vector<MeanCycleEdge> edges;
  std::vector<EdgeInfo> info;
  for (int t : reachable) {
    const int branching = spec.branching(t);
    const Rational central_total = measure ? Rational(1) - Rational(branching - spec.num_slots) * p
                                           : Rational(0);
    for (const auto& child : spec.types[t].children) {
      Rational growth;
      if (measure) {
        const Rational fraction =
            child.slot > 0 ? central_total * weights[child.slot - 1] : p;
        growth = Rational(1) / fraction;  // per-step mass ratio, >= 1 is not required
      } else {
        growth = Rational(branching);  // offspring multiplier of the source type
      }
      edges.push_back({local[t], local[child.type], growth, static_cast<int>(info.size())});
      info.push_back({t, child.type, child.slot});
    }
  }

  const MeanCycleResult cycle = optimal_mean_cycle(static_cast<int>(reachable.size()), edges,
                                                   MeanMode::multiplicative, maximize);
  if (!cycle.found) fail(Errc::InvalidParams, "type graph has no cycle");

  ExactDimension out;
  out.kind = kind;
  out.ratio = cycle.weight;
  out.length = cycle.length;
  out.delta = spec.delta;
  for (int ei : cycle.edges) {
    const EdgeInfo& e = info[edges[ei].label];
    out.cycle.push_back({e.from_type, e.to_type, e.slot == 0, e.slot, edges[ei].weight});
  }
  return out;
}

DimensionReport measure_ball_estimate(const FiniteMetricSpace& space, const CubeTree& tree,
                                      const MassAssignment& mu, const ScaleWindow& window,
                                      long sample_budget, DimKind kind, unsigned threads) {
  if (kind != DimKind::measure_assouad && kind != DimKind::measure_lower)
    fail(Errc::InvalidParams, "ball estimates are measure dimensions");
  if (tree.source != TreeSource::metric)
    fail(Errc::SourceMismatch, "ball estimates need a metric-sourced tree");
  if (sample_budget < 1) fail(Errc::InvalidParams, "sample budget must be positive");
  const bool assouad = kind == DimKind::measure_assouad;

  DimensionReport report;
  report.kind = kind;
  report.method = DimMethod::ball_ratio;
  report.window_r_min = window.r_min;
  report.window_r_max = window.r_max;

  std::vector<double> scales = geometric_scales(window, tree.delta.convert_to<double>());
  if (!assouad) std::erase_if(scales, [&](double s) { return s >= space.diameter(); });
  if (scales.size() < 2) {
    report.flags.push_back("degenerate-window");
    return report;
  }
  const long pair_count = static_cast<long>(scales.size() * (scales.size() - 1) / 2);
  const std::vector<int> centers =
      strided_centers(space.size(), std::max<long>(1, sample_budget / pair_count));

  // point -> containing cube, per level, for the cube-comparability constant
  std::vector<std::vector<int>> cube_of(tree.num_levels + 1, std::vector<int>(space.size(), -1));
  for (const auto& cube : tree.cubes)
    for (int p : cube.members) cube_of[cube.level][p] = cube.id;

  // ball masses cached per (center, scale), with the ratio to the mass of
  // the containing cube at the matching level
  std::vector<std::vector<Rational>> masses(centers.size(),
                                            std::vector<Rational>(scales.size()));
  std::vector<double> max_cube_ratio(centers.size(), 1.0), min_cube_ratio(centers.size(), 1.0);
  run_partitioned(centers.size(), threads, [&](std::size_t ci) {
    for (std::size_t si = 0; si < scales.size(); ++si) {
      const BallMass bm = ball_mass(space, tree, mu, centers[ci], scales[si]);
      masses[ci][si] = bm.mass;
      const int cube = cube_of[bm.level][centers[ci]];
      if (cube >= 0 && mu.masses[cube] > 0) {
        const double ratio = Rational(bm.mass / mu.masses[cube]).convert_to<double>();
        max_cube_ratio[ci] = std::max(max_cube_ratio[ci], ratio);
        min_cube_ratio[ci] = std::min(min_cube_ratio[ci], ratio);
      }
    }
  });
  double cube_ratio_high = 1.0, cube_ratio_low = 1.0;
  for (std::size_t ci = 0; ci < centers.size(); ++ci) {
    cube_ratio_high = std::max(cube_ratio_high, max_cube_ratio[ci]);
    cube_ratio_low = std::min(cube_ratio_low, min_cube_ratio[ci]);
  }

  bool have = false;
  Evidence best;
  std::vector<Evidence> rows;
  for (std::size_t ci = 0; ci < centers.size(); ++ci) {
    for (std::size_t i = 0; i < scales.size(); ++i) {
      for (std::size_t j = i + 1; j < scales.size(); ++j) {
        const double R = scales[i], r = scales[j];
        const Rational ratio = masses[ci][i] / masses[ci][j];
        Evidence ev;
        ev.x = centers[ci];
        ev.big_r = R;
        ev.small_r = r;
        ev.scale_gap = static_cast<long>(j - i);
        ev.log_ratio = log_rational(ratio);
        ev.exponent = ev.log_ratio / std::log(R / r);
        ev.descriptor = "x=" + space.id(centers[ci]) + " R=" + std::to_string(R) +
                        " r=" + std::to_string(r);
        if (!have || (assouad ? ev.exponent > best.exponent : ev.exponent < best.exponent)) {
          have = true;
          best = ev;
        }
        rows.push_back(std::move(ev));
      }
    }
  }
  if (!have) {
    report.flags.push_back("degenerate-window");
    return report;
  }
  report.value = best.exponent;
  report.sup_exponent = best.exponent;
  std::sort(rows.begin(), rows.end(), [&](const Evidence& a, const Evidence& b) {
    return assouad ? a.exponent > b.exponent : a.exponent < b.exponent;
  });
  if (rows.size() > 8) rows.resize(8);
  report.evidence = std::move(rows);
  // realized ball/cube comparability constant across the samples
  report.constant = cube_ratio_high;
  if (cube_ratio_low < 1.0) report.flags.push_back("ball-mass-below-cube-mass");
  return report;
}

DoublingConstant doubling_constant_set(const FiniteMetricSpace& space, const ScaleWindow& window,
                                       int exact_cap) {
  DoublingConstant out;
  for (double r = window.r_max; r >= window.r_min * (1 - 1e-12); r /= 2) {
    for (int x = 0; x < space.size(); ++x) {
      long count = 0;
      try {
        count = covering_number(space, x, 2 * r, r, CoverMode::exact, exact_cap);
      } catch (const Error& e) {
        if (e.code() != Errc::InstanceTooLarge) throw;
        count = covering_number(space, x, 2 * r, r, CoverMode::greedy);
        out.all_exact = false;
      }
      out.value = std::max(out.value, static_cast<double>(count));
    }
  }
  return out;
}

DoublingConstant doubling_constant_measure(const FiniteMetricSpace& space, const CubeTree& tree,
                                           const MassAssignment& mu, const ScaleWindow& window) {
  DoublingConstant out;
  for (double r = window.r_max; r >= window.r_min * (1 - 1e-12); r /= 2) {
    for (int x = 0; x < space.size(); ++x) {
      const Rational big = ball_mass(space, tree, mu, x, 2 * r).mass;
      const Rational small = ball_mass(space, tree, mu, x, r).mass;
      if (small > 0)
        out.value = std::max(out.value, (big / small).convert_to<double>());
    }
  }
  return out;
}

}  // namespace cubedim
