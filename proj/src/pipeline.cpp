#include "borescan/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "borescan/error.hpp"
#include "borescan/parallel.hpp"
#include "borescan/unwrap.hpp"

namespace borescan {

namespace {

BinaryMask segment(const TileImage& tile, const ThresholdSpec& spec) {
  try {
    return binarize(tile, spec);
  } catch (const Error& e) {
    if (e.code() != Errc::degenerate_threshold) throw;
    // Flat tile: nothing to separate, fall back to the fixed level.
    ThresholdSpec fixed = spec;
    fixed.method = ThresholdMethod::fixed;
    return binarize(tile, fixed);
  }
}

// Slack for disc ownership: a centroid on a cell boundary is claimed by
// both neighbours and the copies merge, rather than being dropped by both.
constexpr double kOwnSlackPx = 0.5;

struct TileFrame {
  const InspectContext& ctx;
  CaptureEvent event;
  TileShape shape;
  // Ownership cell in pixel coordinates: the tile's share of the surface
  // (one rotation step by one depth step). Cells of neighbouring tiles
  // partition the surface; the top and bottom rows are open-ended.
  double x_lo, x_hi, y_lo, y_hi;

  bool owns_column(double x, double slack = 0.0) const {
    return x >= x_lo - slack && x < x_hi + slack;
  }
  bool owns_row(double y, double slack = 0.0) const {
    return y >= y_lo - slack && y < y_hi + slack;
  }

  SurfaceBox box(double x0, double x1, double y0, double y1) const {
    const HoleSpec& hole = ctx.hole;
    const double px = ctx.optics.p_x_um / 1000.0;
    const double py = ctx.optics.p_y_um / 1000.0;
    SurfaceBox b;
    b.z_lo_mm = hole.depth_mm - (event.z_mm + (y1 + 0.5 - shape.center_y()) * py);
    b.z_hi_mm = hole.depth_mm - (event.z_mm + (y0 - 0.5 - shape.center_y()) * py);
    const double lo = event.theta_deg +
                      rad_to_deg((x0 - 0.5 - shape.center_x()) * px / hole.radius_mm);
    const double span = rad_to_deg((x1 - x0 + 1.0) * px / hole.radius_mm);
    b.beta_lo_deg = normalize_degrees(lo);
    b.beta_hi_deg = b.beta_lo_deg + span;
    return b;
  }

  DefectRecord record(FeatureKind kind, double cx, double cy,
                      std::size_t pixel_area) const {
    DefectRecord r;
    r.kind = kind;
    const CylinderPoint p = defect_location(event.index(), cx, cy, ctx.plan,
                                            ctx.hole, ctx.optics, shape);
    r.z_mm = p.z_mm;
    r.z_bottom_mm = p.z_bottom_mm;
    r.beta_deg = p.beta_deg;
    r.pixel_area = pixel_area;
    r.physical_area_mm2 = defect_area(pixel_area, ctx.optics.p_x_um, ctx.optics.p_y_um);
    r.sources.push_back({event.index(), cx, cy});
    return r;
  }
};

// Part of a line-like blob inside the ownership cell, along its axis.
std::optional<DefectRecord> line_record(const TileFrame& frame,
                                        const Labeling& labeling,
                                        const BlobRecord& blob, Axis axis) {
  const DetectConfig& cfg = frame.ctx.detect;
  const bool vertical = axis == Axis::vertical;
  // Ownership across the line: its centroid; along it: the cell slices.
  if (vertical ? !frame.owns_column(blob.cx, kOwnSlackPx)
               : !frame.owns_row(blob.cy, kOwnSlackPx)) {
    return std::nullopt;
  }
  const double lo = vertical ? frame.y_lo : frame.x_lo;
  const double hi = vertical ? frame.y_hi : frame.x_hi;
  const int extent = vertical ? labeling.height : labeling.width;
  const int from = static_cast<int>(std::ceil(std::max(lo, 0.0)));
  const int to = static_cast<int>(std::ceil(std::min(hi, double(extent))));

  std::size_t area = 0;
  double sx = 0.0;
  double sy = 0.0;
  int x0 = blob.bbox.x1, x1 = blob.bbox.x0, y0 = blob.bbox.y1, y1 = blob.bbox.y0;
  for (int y = blob.bbox.y0; y <= blob.bbox.y1; ++y) {
    if (vertical && (y < from || y >= to)) continue;
    for (int x = blob.bbox.x0; x <= blob.bbox.x1; ++x) {
      if (!vertical && (x < from || x >= to)) continue;
      if (labeling.at(x, y) != blob.label) continue;
      ++area;
      sx += x;
      sy += y;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (area == 0) return std::nullopt;

  const double pitch = vertical ? frame.ctx.optics.p_x_um : frame.ctx.optics.p_y_um;
  const LineMeasurement width = line_width(labeling, blob, axis, cfg.segment_len,
                                           pitch, std::make_pair(from, to));
  DefectRecord r = frame.record(FeatureKind::line_like, sx / area, sy / area, area);
  r.size_mm = width.mean_width_mm;
  r.segment_widths_mm = width.widths_mm;
  r.box = frame.box(x0, x1, y0, y1);
  r.truncated = vertical ? (blob.bbox.x0 == 0 || blob.bbox.x1 == labeling.width - 1)
                         : (blob.bbox.y0 == 0 || blob.bbox.y1 == labeling.height - 1);
  return r;
}

}  // namespace

std::vector<DefectRecord> detect_tile(const TileImage& corrected,
                                      const InspectContext& ctx) {
  const auto event = ctx.plan.find(corrected.index());
  if (!event) {
    throw Error(Errc::index, "tile is not part of the plan");
  }
  const TileShape shape{corrected.width(), corrected.height()};
  const double inf = std::numeric_limits<double>::infinity();
  const double half_w = 0.5 * deg_to_rad(ctx.plan.alpha_deg) * ctx.hole.radius_mm *
                        1000.0 / ctx.optics.p_x_um;
  const double half_h = 0.5 * ctx.plan.step_mm * 1000.0 / ctx.optics.p_y_um;
  const TileFrame frame{ctx,
                        *event,
                        shape,
                        shape.center_x() - half_w,
                        shape.center_x() + half_w,
                        event->j == 0 ? -inf : shape.center_y() - half_h,
                        event->j == ctx.plan.n_depth - 1 ? inf : shape.center_y() + half_h};

  const BinaryMask mask = segment(corrected, ctx.detect.threshold);
  const Labeling labeling = connected_components(mask, ctx.detect.min_area);

  std::vector<DefectRecord> out;
  for (BlobRecord blob : labeling.blobs) {
    blob.frame = corrected.index();
    blob = blob_metrics(blob, corrected.p_x_um(), corrected.p_y_um());
    const int bw = blob.bbox.width();
    const int bh = blob.bbox.height();
    const Axis axis = bh >= bw ? Axis::vertical : Axis::horizontal;
    // A border cuts a disc across its long side; a cut along the long
    // axis means this is a piece of something that continues next door.
    const bool cut_lengthwise =
        bw != bh && (axis == Axis::vertical
                         ? blob.bbox.y0 == 0 || blob.bbox.y1 == corrected.height() - 1
                         : blob.bbox.x0 == 0 || blob.bbox.x1 == corrected.width() - 1);
    const bool line_like =
        cut_lengthwise || std::max(bw, bh) >= ctx.detect.line_elongation * std::min(bw, bh);
    if (line_like) {
      if (auto r = line_record(frame, labeling, blob, axis)) {
        out.push_back(std::move(*r));
      }
      continue;
    }
    if (!frame.owns_column(blob.cx, kOwnSlackPx) || !frame.owns_row(blob.cy, kOwnSlackPx)) {
      continue;
    }
    DefectRecord r = frame.record(FeatureKind::disc_like, blob.cx, blob.cy, blob.pixel_area);
    r.size_mm = blob.equivalent_diameter_mm;
    r.box = frame.box(blob.bbox.x0, blob.bbox.x1, blob.bbox.y0, blob.bbox.y1);
    r.truncated = blob.touches_border;
    out.push_back(std::move(r));
  }
  return out;
}

InspectionResult inspect_stack(std::span<const TileImage> tiles,
                               const InspectContext& ctx, int threads,
                               bool keep_corrected) {
  InspectionResult result;
  if (keep_corrected) {
    result.corrected.resize(tiles.size());
  }
  std::vector<std::vector<DefectRecord>> per_tile(tiles.size());

  // Tiles of one stack share a width; remap tables are immutable and shared.
  std::map<int, std::shared_ptr<const RemapTable>> remaps;
  for (const auto& tile : tiles) {
    if (!remaps.contains(tile.width())) {
      remaps[tile.width()] = std::make_shared<const RemapTable>(
          tile.width(), ctx.hole.radius_mm, tile.p_x_um());
    }
  }

  parallel_for(tiles.size(), threads, [&](std::size_t i) {
    TileImage fixed = correct_tile(tiles[i], *remaps.at(tiles[i].width()));
    per_tile[i] = detect_tile(fixed, ctx);
    if (keep_corrected) {
      result.corrected[i] = std::move(fixed);
    }
  });

  for (auto& records : per_tile) {
    for (auto& r : records) result.raw.push_back(std::move(r));
  }
  const double tol_beta = rad_to_deg(ctx.detect.tol_arc_mm / ctx.hole.radius_mm);
  result.defects = merge_duplicates(result.raw, ctx.detect.tol_z_mm, tol_beta);
  for (std::size_t i = 0; i < result.defects.size(); ++i) {
    result.defects[i].id = static_cast<int>(i) + 1;
  }
  return result;
}

}  // namespace borescan
