#pragma once

// Defect reports (JSON + CSV) and the truth comparison table.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "borescan/geometry.hpp"
#include "borescan/locate.hpp"
#include "borescan/manifest.hpp"

namespace borescan {

struct KindSummary {
  FeatureKind kind = FeatureKind::disc_like;
  int count = 0;
  double mean_size_mm = 0.0;
  double std_size_mm = 0.0;
};

/// Nearest reported feature for one truth defect.
struct TruthMatch {
  std::size_t truth_index = 0;
  std::optional<int> record_id;
  double truth_size_mm = 0.0;
  double measured_size_mm = 0.0;
  double position_error_mm = 0.0;
};

struct DefectReport {
  double radius_mm = 0.0;
  std::vector<DefectRecord> records;
  std::vector<KindSummary> summary;
  std::optional<std::vector<TruthMatch>> comparison;
};

/// Sample standard deviation (n − 1 denominator); 0 for fewer than two values.
double sample_stddev(std::span<const double> values);

/// Distance on the unwrapped surface between (z, beta) positions.
double surface_distance(double z_a, double beta_a, double z_b, double beta_b,
                        double radius_mm);

/// Index of the record of matching kind nearest to `truth`, if one lies
/// within the match radius.
std::optional<std::size_t> match_truth(const DefectSpec& truth,
                                       std::span<const DefectRecord> records,
                                       double radius_mm);

DefectReport build_report(std::vector<DefectRecord> records, const HoleSpec& hole,
                          const std::optional<std::vector<DefectSpec>>& truth);

std::string report_to_csv(const DefectReport& report);
std::string report_to_json(const DefectReport& report);
DefectReport report_from_json(const std::string& text);

/// One row of the truth comparison: a truth feature (disc diameter, line
/// width or disc-pair spacing) against its measurements across trials.
struct CompareRow {
  std::string feature;
  std::string quantity;  // diameter | width | spacing
  double truth_mm = 0.0;
  int trials = 0;
  int found = 0;
  double mean_mm = 0.0;
  double std_mm = 0.0;
};

std::vector<CompareRow> compare_reports(std::span<const DefectReport> reports,
                                        const std::vector<DefectSpec>& truth,
                                        const HoleSpec& hole);

std::string compare_to_csv(std::span<const CompareRow> rows);

}  // namespace borescan
