#pragma once

// Moving-Rotating-Moving capture schedule: climb one column of captures
// from the hole bottom, rotate, return to the bottom without capturing,
// repeat until the circumference is closed.

#include <optional>
#include <vector>

#include "borescan/geometry.hpp"
#include "borescan/image.hpp"

namespace borescan {

/// Physical extent of the measured central crop of each capture, plus how
/// far the capture itself reaches beyond that crop on every side.
struct EffectiveRegion {
  double f_x_mm = 1.5;  // circumferential (arc) extent
  double f_y_mm = 1.5;  // depth extent
  double margin_mm = 0.15;

  void validate() const;

  friend bool operator==(const EffectiveRegion&, const EffectiveRegion&) = default;
};

/// Pixel dimensions of one capture. Both dimensions are odd so that the
/// center falls on a pixel.
struct TileShape {
  int width = 0;
  int height = 0;

  double center_x() const noexcept { return 0.5 * (width - 1); }
  double center_y() const noexcept { return 0.5 * (height - 1); }
};

TileShape capture_shape(const EffectiveRegion& region, const OpticsConfig& cfg);

/// Effective-region size in pixels (fractional).
double region_width_px(const EffectiveRegion& region, const OpticsConfig& cfg);
double region_height_px(const EffectiveRegion& region, const OpticsConfig& cfg);

struct ShotCounts {
  int n_rot = 0;
  int n_depth = 0;
};

struct CaptureEvent {
  int order = 0;
  int j = 0;              // depth index
  int k = 0;              // rotation index
  double z_mm = 0.0;      // tile center, measured up from the hole bottom
  double theta_deg = 0.0;

  TileIndex index() const noexcept { return {j, k}; }

  friend bool operator==(const CaptureEvent&, const CaptureEvent&) = default;
};

struct ScanPlan {
  int n_rot = 0;
  int n_depth = 0;
  double alpha_deg = 0.0;
  double step_mm = 0.0;
  bool last_tile_overlap = false;  // top row reaches past the hole depth
  std::vector<CaptureEvent> schedule;

  std::optional<CaptureEvent> find(TileIndex index) const;
  bool contains(TileIndex index) const;

  friend bool operator==(const ScanPlan&, const ScanPlan&) = default;
};

ShotCounts shot_counts(const HoleSpec& hole, const EffectiveRegion& region);

ScanPlan plan_scan(const HoleSpec& hole, const EffectiveRegion& region);

/// Same schedule shape with explicit shot counts; alpha = 360 / n_rot.
ScanPlan plan_scan(const HoleSpec& hole, const EffectiveRegion& region,
                   ShotCounts counts);

struct CoverageReport {
  double covered_fraction = 0.0;
  int min_overlap = 0;
  int max_overlap = 0;
  int grid_arc = 0;
  int grid_depth = 0;
};

/// Samples the unwrapped surface on a `grid_mm` lattice and counts how
/// many tile footprints cover each point.
CoverageReport coverage_check(const ScanPlan& plan, const HoleSpec& hole,
                              const EffectiveRegion& region,
                              double grid_mm = 0.01);

}  // namespace borescan
