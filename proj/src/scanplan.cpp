#include "borescan/scanplan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "borescan/error.hpp"

namespace borescan {

namespace {

// Absorbs representation error in ratios that should be exact integers.
constexpr double kCountSlack = 1e-9;

int odd_ceil(double value) {
  int n = static_cast<int>(std::ceil(value - kCountSlack));
  return n % 2 == 0 ? n + 1 : n;
}

}  // namespace

void EffectiveRegion::validate() const {
  if (!(f_x_mm > 0.0) || !(f_y_mm > 0.0)) {
    throw Error(Errc::invalid_config, "region extents must be > 0");
  }
  if (!(margin_mm >= 0.0)) {
    throw Error(Errc::invalid_config, "region margin must be >= 0");
  }
}

TileShape capture_shape(const EffectiveRegion& region, const OpticsConfig& cfg) {
  return {odd_ceil((region.f_x_mm + 2.0 * region.margin_mm) * 1000.0 / cfg.p_x_um),
          odd_ceil((region.f_y_mm + 2.0 * region.margin_mm) * 1000.0 / cfg.p_y_um)};
}

double region_width_px(const EffectiveRegion& region, const OpticsConfig& cfg) {
  return region.f_x_mm * 1000.0 / cfg.p_x_um;
}

double region_height_px(const EffectiveRegion& region, const OpticsConfig& cfg) {
  return region.f_y_mm * 1000.0 / cfg.p_y_um;
}

std::optional<CaptureEvent> ScanPlan::find(TileIndex index) const {
  if (index.j < 0 || index.j >= n_depth || index.k < 0 || index.k >= n_rot) {
    return std::nullopt;
  }
  // Schedules built by plan_scan are column-major; fall back to a scan for
  // hand-edited ones.
  const std::size_t guess = static_cast<std::size_t>(index.k) * n_depth + index.j;
  if (guess < schedule.size() && schedule[guess].index() == index) {
    return schedule[guess];
  }
  for (const auto& e : schedule) {
    if (e.index() == index) return e;
  }
  return std::nullopt;
}

bool ScanPlan::contains(TileIndex index) const { return find(index).has_value(); }

ShotCounts shot_counts(const HoleSpec& hole, const EffectiveRegion& region) {
  hole.validate();
  region.validate();
  if (region.f_x_mm >= 2.0 * hole.radius_mm) {
    throw Error(Errc::degenerate_plan,
                "region arc " + std::to_string(region.f_x_mm) +
                    " mm does not fit the bore diameter " +
                    std::to_string(hole.diameter_mm()) + " mm");
  }
  const double circumference = 2.0 * kPi * hole.radius_mm;
  ShotCounts counts;
  counts.n_rot =
      static_cast<int>(std::ceil(circumference / region.f_x_mm - kCountSlack));
  counts.n_depth =
      static_cast<int>(std::floor(hole.depth_mm / region.f_y_mm + kCountSlack)) + 1;
  return counts;
}

ScanPlan plan_scan(const HoleSpec& hole, const EffectiveRegion& region) {
  return plan_scan(hole, region, shot_counts(hole, region));
}

ScanPlan plan_scan(const HoleSpec& hole, const EffectiveRegion& region,
                   ShotCounts counts) {
  hole.validate();
  region.validate();
  if (counts.n_rot <= 0 || counts.n_depth <= 0) {
    throw Error(Errc::degenerate_plan, "shot counts must be positive");
  }
  ScanPlan plan;
  plan.n_rot = counts.n_rot;
  plan.n_depth = counts.n_depth;
  plan.alpha_deg = 360.0 / counts.n_rot;
  plan.step_mm = region.f_y_mm;
  plan.last_tile_overlap = counts.n_depth * region.f_y_mm > hole.depth_mm;
  plan.schedule.reserve(static_cast<std::size_t>(counts.n_rot) * counts.n_depth);
  int order = 0;
  for (int k = 0; k < counts.n_rot; ++k) {
    // Ascend capturing; the descent back to the bottom is a return stroke.
    for (int j = 0; j < counts.n_depth; ++j) {
      plan.schedule.push_back(
          {order++, j, k, j * plan.step_mm, k * plan.alpha_deg});
    }
  }
  return plan;
}

CoverageReport coverage_check(const ScanPlan& plan, const HoleSpec& hole,
                              const EffectiveRegion& region, double grid_mm) {
  hole.validate();
  region.validate();
  if (!(grid_mm > 0.0)) {
    throw Error(Errc::domain, "coverage grid spacing must be > 0");
  }
  const double circumference = 2.0 * kPi * hole.radius_mm;
  const int nu = std::max(1, static_cast<int>(std::ceil(circumference / grid_mm)));
  const int nz = std::max(1, static_cast<int>(std::ceil(hole.depth_mm / grid_mm)));
  const double du = circumference / nu;
  const double dz = hole.depth_mm / nz;

  CoverageReport report;
  report.grid_arc = nu;
  report.grid_depth = nz;
  if (plan.schedule.empty()) {
    return report;
  }

  // Sample i sits at (i + 0.5) * spacing. 2-D difference array over
  // (depth, arc) sample indices.
  std::vector<int> diff(static_cast<std::size_t>(nz + 1) * (nu + 1), 0);
  auto add_rect = [&](int z0, int z1, int u0, int u1) {
    if (z0 > z1 || u0 > u1) return;
    const std::size_t stride = nu + 1;
    diff[z0 * stride + u0] += 1;
    diff[z0 * stride + u1 + 1] -= 1;
    diff[(z1 + 1) * stride + u0] -= 1;
    diff[(z1 + 1) * stride + u1 + 1] += 1;
  };

  for (const auto& e : plan.schedule) {
    const double zc = e.z_mm;
    const int z0 = std::max(
        0, static_cast<int>(std::ceil((zc - 0.5 * region.f_y_mm) / dz - 0.5)));
    const int z1 = std::min(
        nz - 1,
        static_cast<int>(std::floor((zc + 0.5 * region.f_y_mm) / dz - 0.5)));
    if (z0 > z1) continue;

    if (region.f_x_mm >= circumference) {
      add_rect(z0, z1, 0, nu - 1);
      continue;
    }
    const double uc = deg_to_rad(e.theta_deg) * hole.radius_mm;
    const long a0 = static_cast<long>(
        std::ceil((uc - 0.5 * region.f_x_mm) / du - 0.5));
    const long a1 = static_cast<long>(
        std::floor((uc + 0.5 * region.f_x_mm) / du - 0.5));
    if (a0 > a1) continue;
    // Unwrap the arc interval into [0, nu) pieces.
    const long shift = (a0 >= 0 ? a0 / nu : -((-a0 + nu - 1) / nu)) * nu;
    long lo = a0 - shift;
    long hi = a1 - shift;
    if (hi < nu) {
      add_rect(z0, z1, int(lo), int(hi));
    } else {
      add_rect(z0, z1, int(lo), nu - 1);
      add_rect(z0, z1, 0, int(std::min<long>(hi - nu, lo - 1)));
    }
  }

  const std::size_t stride = nu + 1;
  for (int z = 0; z <= nz; ++z) {
    for (int u = 0; u <= nu; ++u) {
      int v = diff[z * stride + u];
      if (z > 0) v += diff[(z - 1) * stride + u];
      if (u > 0) v += diff[z * stride + u - 1];
      if (z > 0 && u > 0) v -= diff[(z - 1) * stride + u - 1];
      diff[z * stride + u] = v;
    }
  }
  long covered = 0;
  int lo = std::numeric_limits<int>::max();
  int hi = 0;
  for (int z = 0; z < nz; ++z) {
    for (int u = 0; u < nu; ++u) {
      const int count = diff[z * stride + u];
      covered += count > 0;
      lo = std::min(lo, count);
      hi = std::max(hi, count);
    }
  }
  report.covered_fraction = double(covered) / (double(nu) * nz);
  report.min_overlap = lo;
  report.max_overlap = hi;
  return report;
}

}  // namespace borescan
