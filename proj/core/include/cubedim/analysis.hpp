#pragma once

#include <utility>

#include "cubedim/dimension.hpp"

namespace cubedim {

// A root-to-depth chain together with the positions of its boundary steps.
struct ChainProfile {
  std::vector<int> chain;           // cube ids, ancestor first (excludes the start cube)
  std::vector<int> boundary_steps;  // 1-based step indices labelled boundary

  int length() const { return static_cast<int>(chain.size()); }
};

// Modulus from the two-sided step-ratio bound: the larger of
// log_delta p - log_delta p2 and
// log_delta(1 - (M-1) p2) - log_delta(1 - (M-1) p), for p < p2 (auto-swapped).
double continuity_modulus(Rational p, Rational p2, int branching, const Rational& delta);

struct KeyEstimateResult {
  bool pass = true;
  double epsilon = 0;       // the modulus used
  long chains_checked = 0;  // ancestor/descendant pairs examined
  double worst_slack = 0;   // min over chains of the log-slack to either bound
  int worst_from = -1, worst_to = -1;
  ChainProfile worst_chain;
};

// Exhaustively verifies, with exact rational arithmetic, that
//   delta^(eps N) <= [mu_p(Q')/mu_p(Q)] / [mu_p2(Q')/mu_p2(Q)] <= delta^(-eps N)
// over every chain Q' below Q in the tree. The bound delta^(eps N) equals
// min(p/p2, (1-(M-1)p2)/(1-(M-1)p))^N, a rational, so no tolerance enters.
KeyEstimateResult check_key_estimate(const CubeTree& tree, const Rational& p, const Rational& p2);

struct ContinuityRow {
  Rational p, p2;
  double gap_assouad = 0, gap_lower = 0, modulus = 0;
  bool pass = true;
};

struct ContinuityReport {
  bool pass = true;
  std::vector<ContinuityRow> rows;
};

// |dim mu_p - dim mu_p2| <= continuity_modulus(p, p2), exact values both
// sides, for the assouad and lower kinds.
ContinuityReport dimension_continuity_check(const TreeSpec& spec,
                                            const std::vector<std::pair<Rational, Rational>>& pairs);

struct BoundaryChainResult {
  ChainProfile profile;
  Rational fraction;  // realized boundary fraction |B| / N
};

// Depth-N chain from the root maximizing the boundary-step count (dynamic
// programming, ties by cube id).
BoundaryChainResult boundary_chain_search(const CubeTree& tree, int length);

struct BinomBoundResult {
  bool pass = true;
  bool hypothesis_holds = true;  // every chain has <= floor(beta N) boundary steps
  long max_boundary_steps = 0;
  long cap = 0;  // floor(beta N)
  BigInt admissible;  // offspring reached by chains within the cap
  BigInt total;       // all depth-N offspring
  double bound = 0;   // binom(N, cap) * M^(beta N)
};

// Counts the depth-N offspring of the root reachable by chains with at most
// floor(beta N) boundary steps and checks the labelling bound
// binom(N, floor(beta N)) * M^(beta N).
BinomBoundResult binom_bound_check(const TreeSpec& spec, const Rational& beta, int depth);

// Entropy form of the binomial growth rate: H(beta) / log(1/delta).
double kappa(double beta, const Rational& delta);

struct BlowupRow {
  Rational p;
  double value = 0;        // exact assouad dimension of mu_p
  double lower_bound = 0;  // beta_hat * log_delta p
  bool pass = true;
};

struct BlowupReport {
  bool applicable = true;  // false when the spec admits no boundary cycle
  Rational beta_hat;       // maximal per-cycle boundary fraction
  bool pass = true;
  bool diverging = true;   // values strictly increase along a decreasing p list
  std::vector<BlowupRow> rows;
};

// dim_A mu_p >= beta_hat * log_delta p for each p, compared exactly, plus the
// divergence check along a decreasing p list.
BlowupReport blowup_check(const TreeSpec& spec, const std::vector<Rational>& p_list);

struct SolveResult {
  Rational p;
  std::vector<Rational> eta;
  double achieved = 0;
  double target = 0;
  double tol = 0;
  int iterations = 0;
  double range_min = 0, range_max = 0;  // realized dimension range over the scan grid
};

// Solves exact_dimension_spec(kind; p, eta) = target by a geometric grid scan
// over p in (0, 1/M] followed by bisection on the first bracketing interval.
// The lower kind on multi-slot specs follows the path p = u/M,
// eta = (1-u) e_1 + u uniform.
SolveResult ivp_solve(const TreeSpec& spec, double target, DimKind kind, double tol);

struct SweepRow {
  Rational p;
  ExactDimension assouad;
  ExactDimension lower;
};

std::vector<SweepRow> sweep(const TreeSpec& spec, const std::vector<Rational>& p_grid,
                            const std::vector<Rational>& eta);

}  // namespace cubedim
