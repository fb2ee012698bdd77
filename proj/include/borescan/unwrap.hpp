#pragma once

// Arc-surface projection correction.
//
// A flat sensor row images the bore surface non-uniformly: camera column
// offset k (from the tile center) sees the arc position m, in pixels of
// equal arc length p_x, with
//
//   m = (r / p_x) · asin(k · p_x / r)      k = (r / p_x) · sin(m · p_x / r)
//
// Rows are unaffected. correct_tile resamples a capture onto the uniform
// arc grid; forward_project is its analytic inverse and renders what the
// camera sees of a flat texture window.

#include <vector>

#include "borescan/image.hpp"

namespace borescan {

/// Arc-grid offset of camera column offset `k` (both in pixels from center).
double pixel_to_arc(double k, double r_mm, double p_x_um);

/// Camera column offset sampled by arc-grid offset `m`.
double arc_to_pixel(double m, double r_mm, double p_x_um);

/// Bilinear interpolation of the four pixels around (x, y).
double bilinear_sample(const TileImage& img, double x, double y);

/// Source column offsets for each corrected column of a tile.
class RemapTable {
 public:
  RemapTable(int width, double r_mm, double p_x_um);

  int width() const noexcept { return static_cast<int>(offsets_.size()); }
  double center() const noexcept { return center_; }

  /// Camera column offset k for corrected column `column`.
  double offset(int column) const { return offsets_.at(column); }

  /// Absolute fractional source column for corrected column `column`.
  double source_column(int column) const { return center_ + offsets_.at(column); }

  const std::vector<double>& offsets() const noexcept { return offsets_; }

 private:
  double center_ = 0.0;
  std::vector<double> offsets_;
};

RemapTable build_remap(int width, double r_mm, double p_x_um);

/// Resamples a capture onto the uniform arc grid. Same dimensions and
/// pixel equivalents as the input.
TileImage correct_tile(const TileImage& img, double r_mm);
TileImage correct_tile(const TileImage& img, const RemapTable& remap);

/// Renders the camera view of a flat texture window whose pixels are
/// uniform in arc length. The output is `out_width` wide (default: the
/// window width) and shares the window's center column; camera columns
/// whose arc source falls outside the window get the sentinel 0.
TileImage forward_project(const TileImage& texture_window, double r_mm,
                          int out_width = 0);

/// Extra window columns per side that forward_project needs so that a
/// `out_width`-wide projection samples no sentinel.
int forward_margin(int out_width, double r_mm, double p_x_um);

}  // namespace borescan
