#pragma once

// Synthetic bore surfaces with prefabricated defects, rendered through the
// camera model. Serves as ground truth for the inspection pipeline.
//
// Surface coordinates: u is arc length around the bore (mm, periodic with
// the circumference, u = beta·r), z_b is depth measured up from the hole
// bottom (mm). Defect positions are given as (distance to the nozzle,
// beta), the same convention inspection reports use.

#include <cstdint>
#include <string>
#include <vector>

#include "borescan/geometry.hpp"
#include "borescan/image.hpp"
#include "borescan/manifest.hpp"
#include "borescan/scanplan.hpp"

namespace borescan {

class SurfaceTexture {
 public:
  SurfaceTexture(const HoleSpec& hole, std::vector<DefectSpec> defects,
                 double background, double pitch_um);

  double radius_mm() const noexcept { return hole_.radius_mm; }
  double depth_mm() const noexcept { return hole_.depth_mm; }
  double circumference_mm() const noexcept { return 2.0 * kPi * hole_.radius_mm; }
  double pitch_um() const noexcept { return pitch_um_; }
  double background() const noexcept { return background_; }
  const HoleSpec& hole() const noexcept { return hole_; }
  const std::vector<DefectSpec>& defects() const noexcept { return defects_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Grid size of the full unwrapped surface at the texture pitch.
  int width_px() const noexcept;
  int height_px() const noexcept;

  /// Intensities (fraction of full scale, row-major) of a w×h block whose
  /// pixel (i, n) covers u ∈ [u0 + i·p_x, u0 + (i+1)·p_x) and
  /// z_b ∈ [z0 + n·p_y, z0 + (n+1)·p_y). Edges are anti-aliased by 4×4
  /// supersampling; u wraps at the circumference.
  std::vector<float> rasterize(double u0_mm, double z0_mm, int width,
                               int height, double p_x_um, double p_y_um) const;

  /// Same, on the texture's own grid starting at cell (iu, iv).
  std::vector<float> rasterize_grid(int iu, int iv, int width, int height) const;

 private:
  HoleSpec hole_;
  std::vector<DefectSpec> defects_;
  double background_;
  double pitch_um_;
  std::vector<std::string> warnings_;
};

SurfaceTexture build_texture(const HoleSpec& hole,
                             std::vector<DefectSpec> defects,
                             double background, double pitch_um);

/// Camera capture of one scan event: the texture window around the tile
/// center pushed through the flat-sensor projection.
TileImage render_tile(const SurfaceTexture& texture, const CaptureEvent& event,
                      const OpticsConfig& cfg, const EffectiveRegion& region,
                      int bit_depth = 8);

/// Additive zero-mean Gaussian noise with standard deviation
/// `sigma` (fraction of full scale), clamped to the bit depth.
TileImage add_noise(const TileImage& img, double sigma, std::uint64_t seed);

/// Noise seed for one tile of a run.
std::uint64_t tile_seed(std::uint64_t run_seed, TileIndex index);

struct SynthOptions {
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  int bit_depth = 8;
  int threads = 1;
};

struct SyntheticStack {
  std::vector<TileImage> tiles;  // schedule order
  RunManifest manifest;
};

SyntheticStack render_stack(const SurfaceTexture& texture, const ScanPlan& plan,
                            const OpticsConfig& cfg,
                            const EffectiveRegion& region,
                            const SynthOptions& options);

}  // namespace borescan
