#pragma once

// correct -> detect -> locate -> merge over a whole capture stack.

#include <span>
#include <vector>

#include "borescan/detect.hpp"
#include "borescan/geometry.hpp"
#include "borescan/image.hpp"
#include "borescan/locate.hpp"
#include "borescan/scanplan.hpp"

namespace borescan {

struct DetectConfig {
  ThresholdSpec threshold;
  int min_area = kDefaultMinArea;
  int segment_len = kDefaultSegmentLength;
  double line_elongation = 3.0;  // bbox long/short ratio for line-like blobs
  double tol_z_mm = 0.05;
  double tol_arc_mm = 0.05;
};

struct InspectContext {
  HoleSpec hole;
  OpticsConfig optics;
  EffectiveRegion region;
  ScanPlan plan;
  DetectConfig detect;
};

/// Features owned by one corrected tile. Each tile owns one rotation step by
/// one depth step of surface around its center; a disc belongs to the cell
/// holding its centroid, a line-like blob contributes the rows (or columns)
/// inside the cell. Blobs cut lengthwise by the tile border count as line
/// pieces.
std::vector<DefectRecord> detect_tile(const TileImage& corrected,
                                      const InspectContext& ctx);

struct InspectionResult {
  std::vector<TileImage> corrected;  // input order
  std::vector<DefectRecord> raw;     // per-tile records before merging
  std::vector<DefectRecord> defects; // merged, ids 1..n
};

InspectionResult inspect_stack(std::span<const TileImage> tiles,
                               const InspectContext& ctx, int threads,
                               bool keep_corrected = true);

}  // namespace borescan
