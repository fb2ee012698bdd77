#include "borescan/locate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "borescan/error.hpp"

namespace borescan {

namespace {

// Signed shortest rotation from a to b, in (-180, 180].
double signed_delta(double a_deg, double b_deg) {
  double d = std::fmod(b_deg - a_deg, 360.0);
  if (d > 180.0) d -= 360.0;
  if (d <= -180.0) d += 360.0;
  return d;
}

double interval_gap(double a_lo, double a_hi, double b_lo, double b_hi) {
  return std::max(a_lo, b_lo) - std::min(a_hi, b_hi);
}

double overlap_fraction(double a_lo, double a_hi, double b_lo, double b_hi) {
  const double overlap = std::min(a_hi, b_hi) - std::max(a_lo, b_lo);
  const double smaller = std::min(a_hi - a_lo, b_hi - b_lo);
  return smaller > 0.0 ? overlap / smaller : 0.0;
}

// b's footprint shifted by whole turns so its beta range sits next to a's.
SurfaceBox align_to(const SurfaceBox& a, SurfaceBox b) {
  const double a_mid = 0.5 * (a.beta_lo_deg + a.beta_hi_deg);
  const double b_mid = 0.5 * (b.beta_lo_deg + b.beta_hi_deg);
  const double shift = a_mid + signed_delta(a_mid, b_mid) - b_mid;
  b.beta_lo_deg += shift;
  b.beta_hi_deg += shift;
  return b;
}

bool linked(const DefectRecord& a, const DefectRecord& b, double tol_z,
            double tol_beta) {
  if (a.kind != b.kind) return false;
  if (a.kind == FeatureKind::disc_like) {
    return std::abs(a.z_mm - b.z_mm) <= tol_z &&
           angular_distance(a.beta_deg, b.beta_deg) <= tol_beta;
  }
  const SurfaceBox bb = align_to(a.box, b.box);
  return interval_gap(a.box.z_lo_mm, a.box.z_hi_mm, bb.z_lo_mm, bb.z_hi_mm) <= tol_z &&
         interval_gap(a.box.beta_lo_deg, a.box.beta_hi_deg, bb.beta_lo_deg,
                      bb.beta_hi_deg) <= tol_beta;
}

// Both records cover essentially the same patch of surface.
bool same_patch(const SurfaceBox& a, const SurfaceBox& b_raw) {
  const SurfaceBox b = align_to(a, b_raw);
  return overlap_fraction(a.z_lo_mm, a.z_hi_mm, b.z_lo_mm, b.z_hi_mm) > 0.5 &&
         overlap_fraction(a.beta_lo_deg, a.beta_hi_deg, b.beta_lo_deg,
                          b.beta_hi_deg) > 0.5;
}

SurfaceBox box_union(const SurfaceBox& a, const SurfaceBox& b_raw) {
  const SurfaceBox b = align_to(a, b_raw);
  SurfaceBox u{std::min(a.z_lo_mm, b.z_lo_mm), std::max(a.z_hi_mm, b.z_hi_mm),
               std::min(a.beta_lo_deg, b.beta_lo_deg),
               std::max(a.beta_hi_deg, b.beta_hi_deg)};
  const double lo = normalize_degrees(u.beta_lo_deg);
  u.beta_hi_deg += lo - u.beta_lo_deg;
  u.beta_lo_deg = lo;
  return u;
}

DefectRecord combine(const DefectRecord& a, const DefectRecord& b) {
  const double wa = static_cast<double>(std::max<std::size_t>(a.pixel_area, 1));
  const double wb = static_cast<double>(std::max<std::size_t>(b.pixel_area, 1));
  const double fb = wb / (wa + wb);

  DefectRecord out = a.pixel_area >= b.pixel_area ? a : b;
  out.id = std::min(a.id, b.id);
  out.z_mm = a.z_mm + fb * (b.z_mm - a.z_mm);
  out.z_bottom_mm = a.z_bottom_mm + fb * (b.z_bottom_mm - a.z_bottom_mm);
  out.beta_deg = normalize_degrees(a.beta_deg + fb * signed_delta(a.beta_deg, b.beta_deg));
  out.sources = a.sources;
  out.sources.insert(out.sources.end(), b.sources.begin(), b.sources.end());
  out.box = box_union(a.box, b.box);
  out.truncated = a.truncated && b.truncated;

  const bool duplicate = a.kind == FeatureKind::disc_like || same_patch(a.box, b.box);
  if (!duplicate) {
    // Adjoining pieces of one line.
    out.pixel_area = a.pixel_area + b.pixel_area;
    out.physical_area_mm2 = a.physical_area_mm2 + b.physical_area_mm2;
    out.segment_widths_mm = a.segment_widths_mm;
    out.segment_widths_mm.insert(out.segment_widths_mm.end(),
                                 b.segment_widths_mm.begin(),
                                 b.segment_widths_mm.end());
    double sum = 0.0;
    for (double w : out.segment_widths_mm) sum += w;
    if (!out.segment_widths_mm.empty()) {
      out.size_mm = sum / out.segment_widths_mm.size();
    }
  }
  return out;
}

}  // namespace

double normalize_degrees(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0.0) d += 360.0;
  // fmod of a tiny negative can round back up to exactly 360.
  if (d >= 360.0) d = 0.0;
  return d;
}

double angular_distance(double a_deg, double b_deg) {
  return std::abs(signed_delta(a_deg, b_deg));
}

CylinderPoint defect_location(TileIndex index, double m, double n,
                              const ScanPlan& plan, const HoleSpec& hole,
                              const OpticsConfig& cfg, const TileShape& shape) {
  const auto event = plan.find(index);
  if (!event) {
    throw Error(Errc::index, "tile (j=" + std::to_string(index.j) + ", k=" +
                                 std::to_string(index.k) + ") is not in the plan");
  }
  if (m < -0.5 || m > shape.width - 0.5 || n < -0.5 || n > shape.height - 0.5) {
    throw Error(Errc::out_of_bounds, "pixel lies outside the corrected tile");
  }
  CylinderPoint p;
  p.z_bottom_mm = event->z_mm + (n - shape.center_y()) * cfg.p_y_um / 1000.0;
  p.z_mm = hole.depth_mm - p.z_bottom_mm;
  const double arc_mm = (m - shape.center_x()) * cfg.p_x_um / 1000.0;
  p.beta_deg = normalize_degrees(event->theta_deg + rad_to_deg(arc_mm / hole.radius_mm));
  return p;
}

double defect_area(std::size_t pixel_area, double p_x_um, double p_y_um) {
  return pixel_area * p_x_um * p_y_um * 1e-6;
}

std::vector<DefectRecord> merge_duplicates(std::vector<DefectRecord> records,
                                           double tol_z_mm, double tol_beta_deg) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < records.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < records.size(); ++j) {
        if (linked(records[i], records[j], tol_z_mm, tol_beta_deg)) {
          records[i] = combine(records[i], records[j]);
          records.erase(records.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
      }
    }
  }
  return records;
}

TileShape panorama_shape(const HoleSpec& hole, const OpticsConfig& cfg) {
  return {static_cast<int>(std::lround(2.0 * kPi * hole.radius_mm * 1000.0 / cfg.p_x_um)),
          static_cast<int>(std::ceil(hole.depth_mm * 1000.0 / cfg.p_y_um))};
}

Panorama stitch_panorama(std::span<const TileImage> corrected,
                         const ScanPlan& plan, const HoleSpec& hole,
                         const OpticsConfig& cfg, const EffectiveRegion& region) {
  const TileShape pano = panorama_shape(hole, cfg);
  const int bit_depth = corrected.empty() ? 8 : corrected.front().bit_depth();
  Panorama out;
  out.image = TileImage(pano.width, pano.height, bit_depth, cfg.p_x_um, cfg.p_y_um);

  const int half_w = static_cast<int>(std::floor(0.5 * region_width_px(region, cfg)));
  const int half_h = static_cast<int>(std::floor(0.5 * region_height_px(region, cfg)));

  std::vector<const TileImage*> by_order(plan.schedule.size(), nullptr);
  for (const auto& tile : corrected) {
    for (std::size_t i = 0; i < plan.schedule.size(); ++i) {
      if (plan.schedule[i].index() == tile.index()) {
        by_order[i] = &tile;
        break;
      }
    }
  }

  for (std::size_t i = 0; i < plan.schedule.size(); ++i) {
    const CaptureEvent& event = plan.schedule[i];
    const TileImage* tile = by_order[i];
    if (tile == nullptr) {
      out.missing_tiles.push_back(event.index());
      continue;
    }
    const int mc = (tile->width() - 1) / 2;
    const int nc = (tile->height() - 1) / 2;
    const long col0 = std::lround(deg_to_rad(event.theta_deg) * hole.radius_mm *
                                  1000.0 / cfg.p_x_um);
    const long row0 = std::lround(event.z_mm * 1000.0 / cfg.p_y_um);
    const int hw = std::min(half_w, mc);
    const int hh = std::min(half_h, nc);
    if (event.j == 0) {
      out.seam_columns.push_back(
          static_cast<int>(((col0 - hw) % pano.width + pano.width) % pano.width));
    }
    if (event.k == 0) {
      out.seam_rows.push_back(static_cast<int>(row0 - hh));
    }
    for (int dy = -hh; dy <= hh; ++dy) {
      const long row = row0 + dy;
      if (row < 0 || row >= pano.height) continue;
      for (int dx = -hw; dx <= hw; ++dx) {
        const long col = ((col0 + dx) % pano.width + pano.width) % pano.width;
        out.image.at(static_cast<int>(col), static_cast<int>(row)) =
            tile->at(mc + dx, nc + dy);
      }
    }
  }
  return out;
}

}  // namespace borescan
