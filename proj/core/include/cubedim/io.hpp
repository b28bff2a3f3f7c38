#pragma once

#include <iosfwd>
#include <string>

#include "cubedim/analysis.hpp"

namespace cubedim {

inline constexpr const char* kToolName = "cubedim";
inline constexpr const char* kVersion = "0.1.0";

// Point clouds: "id,x1,...,xd" coordinate rows or "id_row,id_col,dist"
// matrix triplets, detected from the header.
FiniteMetricSpace load_points_csv(std::istream& in, CoordMetric metric = CoordMetric::euclidean);
FiniteMetricSpace load_points_csv_string(const std::string& text,
                                         CoordMetric metric = CoordMetric::euclidean);
std::string points_to_csv(const FiniteMetricSpace& space);

std::string tree_spec_to_json(const TreeSpec& spec);
TreeSpec tree_spec_from_json(const std::string& text);

std::string cube_tree_to_json(const CubeTree& tree);
CubeTree cube_tree_from_json(const std::string& text);

std::string mass_assignment_to_json(const MassAssignment& mu, const std::string& tree_ref);
MassAssignment mass_assignment_from_json(const std::string& text, const CubeTree& tree);

std::string metric_validation_to_json(const MetricValidation& report);
std::string tree_validation_to_json(const TreeValidation& report);
std::string dimension_report_to_json(const DimensionReport& report, bool emit_evidence);
std::string exact_dimension_to_json(const ExactDimension& dim, bool emit_evidence);
std::string key_estimate_to_json(const KeyEstimateResult& result);
std::string continuity_report_to_json(const ContinuityReport& report);
std::string binom_bound_to_json(const BinomBoundResult& result);
std::string blowup_report_to_json(const BlowupReport& report);
std::string solve_result_to_json(const SolveResult& result);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

}  // namespace cubedim
