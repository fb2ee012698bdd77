#pragma once

// Tile pixels to cylinder coordinates, cross-tile deduplication and the
// stitched panorama.
//
// Conventions: j indexes depth steps and k rotations everywhere. The scan
// plan measures depth up from the hole bottom (z_bottom); reports use the
// distance to the nozzle, z = depth − z_bottom. beta is the angle from the
// initial rotation, in [0, 360).

#include <span>
#include <vector>

#include "borescan/geometry.hpp"
#include "borescan/image.hpp"
#include "borescan/scanplan.hpp"

namespace borescan {

enum class FeatureKind { disc_like, line_like };

struct CylinderPoint {
  double z_mm = 0.0;         // distance to the nozzle
  double z_bottom_mm = 0.0;  // height above the hole bottom
  double beta_deg = 0.0;
};

/// Detection of a feature in one tile, in that tile's corrected pixels.
struct SourceHit {
  TileIndex tile;
  double m = 0.0;
  double n = 0.0;

  friend bool operator==(const SourceHit&, const SourceHit&) = default;
};

/// Footprint on the unwrapped surface. beta_hi may exceed 360 when the
/// footprint crosses the seam; beta_lo is in [0, 360).
struct SurfaceBox {
  double z_lo_mm = 0.0;
  double z_hi_mm = 0.0;
  double beta_lo_deg = 0.0;
  double beta_hi_deg = 0.0;

  friend bool operator==(const SurfaceBox&, const SurfaceBox&) = default;
};

struct DefectRecord {
  int id = 0;
  FeatureKind kind = FeatureKind::disc_like;
  double z_mm = 0.0;
  double z_bottom_mm = 0.0;
  double beta_deg = 0.0;
  double size_mm = 0.0;  // equivalent diameter, or mean width for lines
  double physical_area_mm2 = 0.0;
  std::size_t pixel_area = 0;
  std::vector<SourceHit> sources;
  std::vector<double> segment_widths_mm;  // line-like only
  SurfaceBox box;
  bool truncated = false;  // touched a tile border in some source

  friend bool operator==(const DefectRecord&, const DefectRecord&) = default;
};

double normalize_degrees(double deg);

/// Circular distance between two angles, in [0, 180].
double angular_distance(double a_deg, double b_deg);

/// Maps corrected-tile pixel (m, n) of tile `index` to the bore surface.
CylinderPoint defect_location(TileIndex index, double m, double n,
                              const ScanPlan& plan, const HoleSpec& hole,
                              const OpticsConfig& cfg, const TileShape& shape);

/// Pixel count to mm².
double defect_area(std::size_t pixel_area, double p_x_um, double p_y_um);

/// Collapses records of the same feature seen by several tiles.
///
/// Disc-like records link when their centres are within (tol_z, tol_beta).
/// Line-like records link when their footprints are within the same gaps,
/// so consecutive pieces of a long line join up. Duplicates keep the
/// largest area estimate and an area-weighted centroid; adjoining line
/// pieces pool their areas and segment widths. Repeats until no pair
/// links, so the result is a fixpoint.
std::vector<DefectRecord> merge_duplicates(std::vector<DefectRecord> records,
                                           double tol_z_mm, double tol_beta_deg);

struct Panorama {
  TileImage image;  // row 0 at the hole bottom, column 0 at beta = 0
  std::vector<int> seam_columns;
  std::vector<int> seam_rows;
  std::vector<TileIndex> missing_tiles;
};

/// Panorama geometry for a bore: circumference × depth in pixels.
TileShape panorama_shape(const HoleSpec& hole, const OpticsConfig& cfg);

/// Pastes the effective region of each corrected tile at its plan
/// position; later tiles overwrite earlier ones where they overlap.
Panorama stitch_panorama(std::span<const TileImage> corrected,
                         const ScanPlan& plan, const HoleSpec& hole,
                         const OpticsConfig& cfg, const EffectiveRegion& region);

}  // namespace borescan
