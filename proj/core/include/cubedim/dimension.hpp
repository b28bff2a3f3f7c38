#pragma once

#include <string>
#include <vector>

#include "cubedim/measures.hpp"

namespace cubedim {

enum class DimKind { set_assouad, set_lower, measure_assouad, measure_lower };
enum class DimMethod { chain_sup, chain_inf, slope_fit, exact_cycle, ball_ratio };

const char* to_string(DimKind k);
const char* to_string(DimMethod m);
DimKind dim_kind_from_string(const std::string& name);

struct Evidence {
  std::string descriptor;  // human-readable witness
  int x = -1;              // sample center (set/ball methods)
  double big_r = 0, small_r = 0;
  int cube_from = -1, cube_to = -1;  // ancestor/descendant pair (chain methods)
  long scale_gap = 0;                // N = n_r - n_R, or the chain length m
  double log_ratio = 0;              // raw log of the counted or measured ratio
  double exponent = 0;               // log_ratio normalized by the scale gap
};

// A dimension estimate with its method, per-scale evidence and realized
// constant, so every reported number can be audited and reproduced.
struct DimensionReport {
  DimKind kind{};
  DimMethod method{};
  double value = 0;
  bool infinite = false;
  double constant = 1;       // realized constant C for finite-data methods
  double sup_exponent = 0;   // extremal raw exponent accompanying slope fits
  std::vector<Evidence> evidence;
  double window_r_min = 0, window_r_max = 0;
  int depth_min = -1, depth_max = -1;
  std::vector<std::string> flags;
};

// Covering-number estimators over a deterministic geometric scale grid with
// all data points as centers, capped by sample_budget. The report's value is
// the least-squares slope over per-pair extremal counts restricted to large
// R/r; the raw sup/inf exponent rides along in sup_exponent and evidence.
DimensionReport set_assouad_estimate(const FiniteMetricSpace& space, const ScaleWindow& window,
                                     long sample_budget, unsigned threads = 1);
DimensionReport set_lower_estimate(const FiniteMetricSpace& space, const ScaleWindow& window,
                                   long sample_budget, unsigned threads = 1);

// Extremal mass-ratio exponent over every offspring chain of length >= m_min:
// max (assouad) or min (lower) of log(mass(Q)/mass(Q')) / (m log(1/delta)).
DimensionReport measure_chain_estimate(const CubeTree& tree, const MassAssignment& mu, int m_min,
                                       DimKind kind);

struct CycleStep {
  int from_type = 0, to_type = 0;
  bool boundary = false;
  int slot = 0;
  Rational growth;  // per-step mass ratio (measure kinds) or child count (set kinds)
};

// Exact dimension of the infinite self-similar tree induced by a spec, as an
// optimal mean cycle in the type graph. The value keeps its exact
// log-of-rational structure: log(ratio) / (length * log(1/delta)).
struct ExactDimension {
  DimKind kind{};
  Rational ratio;
  long length = 1;
  Rational delta;
  std::vector<CycleStep> cycle;
  double value() const;
};

// measure kinds need p (and eta with one weight per slot); set kinds ignore
// both. p is admissible whenever every step fraction stays positive.
ExactDimension exact_dimension_spec(const TreeSpec& spec, const Rational& p,
                                    const std::vector<Rational>& eta, DimKind kind);

// Ball-mass ratio estimator over sampled (x, R, r): sup or inf of
// log(mu(B(x,R))/mu(B(x,r))) / log(R/r).
DimensionReport measure_ball_estimate(const FiniteMetricSpace& space, const CubeTree& tree,
                                      const MassAssignment& mu, const ScaleWindow& window,
                                      long sample_budget, DimKind kind, unsigned threads = 1);

struct DoublingConstant {
  double value = 1;
  bool all_exact = true;  // false when greedy covering stood in for exact
};

// sup over points and grid scales of N(x, 2r, r), exact while balls stay
// within exact_cap.
DoublingConstant doubling_constant_set(const FiniteMetricSpace& space, const ScaleWindow& window,
                                       int exact_cap = 20);
// sup of mu(B(x,2r)) / mu(B(x,r)) over points and grid scales.
DoublingConstant doubling_constant_measure(const FiniteMetricSpace& space, const CubeTree& tree,
                                           const MassAssignment& mu, const ScaleWindow& window);

}  // namespace cubedim
