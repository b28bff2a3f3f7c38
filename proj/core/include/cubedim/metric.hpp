#pragma once

#include <string>
#include <vector>

#include "cubedim/errors.hpp"
#include "cubedim/rational.hpp"

namespace cubedim {

enum class CoordMetric { euclidean, chebyshev, manhattan };

CoordMetric coord_metric_from_string(const std::string& name);
const char* to_string(CoordMetric m);

// A finite point set with a total distance oracle: either coordinates under a
// chosen metric, or a dense symmetric matrix. Immutable after construction;
// distance comparisons use zero tolerance for matrix sources and a relative
// 1e-12 slack for floating-point coordinates.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_coordinates(std::vector<std::string> ids,
                                            std::vector<std::vector<double>> coords,
                                            CoordMetric metric = CoordMetric::euclidean);
  static FiniteMetricSpace from_matrix(std::vector<std::string> ids,
                                       std::vector<double> dense_row_major);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(int i) const { return ids_[i]; }
  int index_of(const std::string& id) const;  // -1 when unknown

  double distance(int a, int b) const;
  double diameter() const { return diameter_; }
  double min_positive_distance() const { return min_positive_; }

  // Relative comparison slack; see leq().
  double tolerance() const { return matrix_mode_ ? 0.0 : 1e-12; }
  // Closed-ball style comparison d <= bound, with the source's slack applied.
  bool leq(double d, double bound) const {
    return d <= bound + tolerance() * (bound > 1 ? bound : 1.0);
  }

  bool has_coordinates() const { return !matrix_mode_; }
  int coord_dim() const { return dim_; }
  const std::vector<double>& flat_coordinates() const { return coords_; }
  double coordinate(int point, int axis) const { return coords_[static_cast<std::size_t>(point) * dim_ + axis]; }
  CoordMetric metric() const { return metric_; }

 private:
  FiniteMetricSpace() = default;
  void finalize();  // caches diameter and min positive distance (O(n^2))

  std::vector<std::string> ids_;
  std::vector<double> coords_;  // n*dim, row-major (coordinate mode)
  std::vector<double> matrix_;  // n*n, row-major (matrix mode)
  CoordMetric metric_ = CoordMetric::euclidean;
  bool matrix_mode_ = false;
  int dim_ = 0;
  double diameter_ = 0.0;
  double min_positive_ = 0.0;
};

struct ScaleWindow {
  double r_min = 0.0;
  double r_max = 0.0;
  ScaleWindow(double rmin, double rmax) : r_min(rmin), r_max(rmax) {
    if (!(rmin > 0.0) || !(rmin < rmax)) fail(Errc::WindowInvalid, "need 0 < r_min < r_max");
  }
};

struct MetricViolation {
  std::string kind;  // self_distance | symmetry | positivity | negativity | triangle
  std::vector<std::string> ids;
  std::vector<double> values;
};

struct MetricValidation {
  bool pass = true;
  bool sampled = false;  // triangle inequality checked on sampled triples only
  std::vector<MetricViolation> violations;
};

// Checks the metric axioms. Triangle inequality is exhaustive up to 500
// points and deterministically sampled above. Violations are data, not
// errors.
MetricValidation validate_metric(const FiniteMetricSpace& space);

// Maximal radius-separated subset of `candidates` containing `seeds` as a
// prefix, grown by scanning candidates in index order. Every candidate ends
// up within `radius` of some net point; net points are pairwise > radius
// apart.
std::vector<int> greedy_net(const FiniteMetricSpace& space, const std::vector<int>& candidates,
                            double radius, const std::vector<int>& seeds);

enum class CoverMode { greedy, exact };

// Minimal (exact) or greedy-net (upper bound) number of closed r-balls
// centered at space points needed to cover B(x, R). Exact mode is an
// exhaustive set cover, permitted only while |B(x,R)| <= exact_cap.
long covering_number(const FiniteMetricSpace& space, int x, double R, double r, CoverMode mode,
                     int exact_cap = 20);

// Least integer n with delta^n <= t (up to a relative 1e-12 slack so that
// exact powers given as doubles land on the intended index).
long scale_index(double t, const Rational& delta);

}  // namespace cubedim
