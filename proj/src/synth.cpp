#include "borescan/synth.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "borescan/error.hpp"
#include "borescan/parallel.hpp"
#include "borescan/unwrap.hpp"

namespace borescan {

namespace {

constexpr int kSuperSamples = 4;

// Defect footprint on the unwrapped surface, centered at (u, z_b).
struct Footprint {
  DefectKind kind;
  double cu;
  double cz;
  double half_u;
  double half_z;
  double contrast;

  bool contains(double du, double dz) const {
    if (kind == DefectKind::disc) {
      return du * du + dz * dz <= half_u * half_u;
    }
    return std::abs(du) <= half_u && std::abs(dz) <= half_z;
  }
};

Footprint footprint(const DefectSpec& d, const HoleSpec& hole) {
  Footprint f{d.kind, deg_to_rad(d.beta_deg) * hole.radius_mm,
              hole.depth_mm - d.z_mm, 0.0, 0.0, d.contrast};
  if (d.kind == DefectKind::disc) {
    f.half_u = f.half_z = 0.5 * d.size_mm;
  } else if (d.axis == LineAxis::axial) {
    f.half_u = 0.5 * d.size_mm;
    f.half_z = 0.5 * d.length_mm;
  } else {
    f.half_u = 0.5 * d.length_mm;
    f.half_z = 0.5 * d.size_mm;
  }
  return f;
}

double circular_gap(double a, double b, double period) {
  double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

}  // namespace

void DefectSpec::validate() const {
  if (!(size_mm > 0.0)) {
    throw Error(Errc::placement, "defect size must be > 0");
  }
  if (!(beta_deg >= 0.0 && beta_deg < 360.0)) {
    throw Error(Errc::placement, "defect beta must be in [0, 360)");
  }
  if (kind == DefectKind::line && !(length_mm > 0.0)) {
    throw Error(Errc::placement, "line defect length must be > 0");
  }
}

SurfaceTexture::SurfaceTexture(const HoleSpec& hole,
                               std::vector<DefectSpec> defects,
                               double background, double pitch_um)
    : hole_(hole),
      defects_(std::move(defects)),
      background_(background),
      pitch_um_(pitch_um) {
  hole_.validate();
  if (!(pitch_um > 0.0)) {
    throw Error(Errc::invalid_config, "texture pitch must be > 0");
  }
  const double circumference = circumference_mm();
  std::vector<Footprint> prints;
  for (std::size_t i = 0; i < defects_.size(); ++i) {
    const auto& d = defects_[i];
    d.validate();
    const Footprint f = footprint(d, hole_);
    if (f.cz - f.half_z < 0.0 || f.cz + f.half_z > hole_.depth_mm) {
      throw Error(Errc::placement, "defect " + std::to_string(i) +
                                       " extends beyond the hole depth");
    }
    if (2.0 * f.half_u >= circumference) {
      throw Error(Errc::placement, "defect " + std::to_string(i) +
                                       " is longer than the circumference");
    }
    for (std::size_t o = 0; o < prints.size(); ++o) {
      const Footprint& g = prints[o];
      if (circular_gap(f.cu, g.cu, circumference) < f.half_u + g.half_u &&
          std::abs(f.cz - g.cz) < f.half_z + g.half_z) {
        warnings_.push_back("defects " + std::to_string(o) + " and " +
                            std::to_string(i) + " overlap");
      }
    }
    prints.push_back(f);
  }
}

int SurfaceTexture::width_px() const noexcept {
  return static_cast<int>(std::lround(circumference_mm() * 1000.0 / pitch_um_));
}

int SurfaceTexture::height_px() const noexcept {
  return static_cast<int>(std::lround(hole_.depth_mm * 1000.0 / pitch_um_));
}

std::vector<float> SurfaceTexture::rasterize(double u0_mm, double z0_mm,
                                             int width, int height,
                                             double p_x_um,
                                             double p_y_um) const {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::invalid_config, "raster block must be non-empty");
  }
  std::vector<float> out(static_cast<std::size_t>(width) * height,
                         static_cast<float>(background_));
  const double px = p_x_um / 1000.0;
  const double py = p_y_um / 1000.0;
  const double circumference = circumference_mm();

  std::array<double, kSuperSamples> sub{};
  for (int s = 0; s < kSuperSamples; ++s) {
    sub[s] = (s + 0.5) / kSuperSamples;
  }

  for (const auto& defect : defects_) {
    const Footprint f = footprint(defect, hole_);
    const int r0 = std::max(0, int(std::floor((f.cz - f.half_z - z0_mm) / py)));
    const int r1 =
        std::min(height - 1, int(std::floor((f.cz + f.half_z - z0_mm) / py)));
    if (r0 > r1) continue;
    // The block may straddle the u seam; try the neighbouring periods too.
    for (const double period_shift : {-circumference, 0.0, circumference}) {
      const double cu = f.cu + period_shift;
      const int c0 = std::max(0, int(std::floor((cu - f.half_u - u0_mm) / px)));
      const int c1 =
          std::min(width - 1, int(std::floor((cu + f.half_u - u0_mm) / px)));
      if (c0 > c1) continue;
      for (int row = r0; row <= r1; ++row) {
        for (int col = c0; col <= c1; ++col) {
          int inside = 0;
          for (int sy = 0; sy < kSuperSamples; ++sy) {
            const double dz = z0_mm + (row + sub[sy]) * py - f.cz;
            for (int sx = 0; sx < kSuperSamples; ++sx) {
              const double du = u0_mm + (col + sub[sx]) * px - cu;
              inside += f.contains(du, dz);
            }
          }
          if (inside > 0) {
            out[static_cast<std::size_t>(row) * width + col] += static_cast<float>(
                f.contrast * inside / double(kSuperSamples * kSuperSamples));
          }
        }
      }
    }
  }
  return out;
}

std::vector<float> SurfaceTexture::rasterize_grid(int iu, int iv, int width,
                                                  int height) const {
  const double p = pitch_um_ / 1000.0;
  return rasterize(iu * p, iv * p, width, height, pitch_um_, pitch_um_);
}

SurfaceTexture build_texture(const HoleSpec& hole,
                             std::vector<DefectSpec> defects,
                             double background, double pitch_um) {
  return SurfaceTexture(hole, std::move(defects), background, pitch_um);
}

TileImage render_tile(const SurfaceTexture& texture, const CaptureEvent& event,
                      const OpticsConfig& cfg, const EffectiveRegion& region,
                      int bit_depth) {
  const double r = texture.radius_mm();
  const TileShape shape = capture_shape(region, cfg);
  const int margin = forward_margin(shape.width, r, cfg.p_x_um);
  const int window_width = shape.width + 2 * margin;

  const double px = cfg.p_x_um / 1000.0;
  const double py = cfg.p_y_um / 1000.0;
  const double center_u = deg_to_rad(event.theta_deg) * r;
  const double u0 = center_u - (0.5 * (window_width - 1) + 0.5) * px;
  const double z0 = event.z_mm - (shape.center_y() + 0.5) * py;
  const auto values = texture.rasterize(u0, z0, window_width, shape.height,
                                        cfg.p_x_um, cfg.p_y_um);

  TileImage window(window_width, shape.height, bit_depth, cfg.p_x_um,
                   cfg.p_y_um, event.index());
  const double full_scale = window.max_value();
  for (int y = 0; y < shape.height; ++y) {
    for (int x = 0; x < window_width; ++x) {
      window.set_level(
          x, y, values[static_cast<std::size_t>(y) * window_width + x] * full_scale);
    }
  }
  return forward_project(window, r, shape.width);
}

TileImage add_noise(const TileImage& img, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) {
    throw Error(Errc::domain, "noise sigma must be >= 0");
  }
  TileImage out = img;
  if (sigma == 0.0) {
    return out;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> noise(0.0, sigma * img.max_value());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      out.set_level(x, y, out.at(x, y) + noise(rng));
    }
  }
  return out;
}

std::uint64_t tile_seed(std::uint64_t run_seed, TileIndex index) {
  std::seed_seq seq{static_cast<std::uint32_t>(run_seed),
                    static_cast<std::uint32_t>(run_seed >> 32),
                    static_cast<std::uint32_t>(index.j),
                    static_cast<std::uint32_t>(index.k)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (std::uint64_t(words[0]) << 32) | words[1];
}

SyntheticStack render_stack(const SurfaceTexture& texture, const ScanPlan& plan,
                            const OpticsConfig& cfg,
                            const EffectiveRegion& region,
                            const SynthOptions& options) {
  SyntheticStack stack;
  stack.tiles.resize(plan.schedule.size());
  parallel_for(plan.schedule.size(), options.threads, [&](std::size_t i) {
    const CaptureEvent& event = plan.schedule[i];
    TileImage tile = render_tile(texture, event, cfg, region, options.bit_depth);
    if (options.noise_sigma > 0.0) {
      tile = add_noise(tile, options.noise_sigma,
                       tile_seed(options.seed, event.index()));
    }
    stack.tiles[i] = std::move(tile);
  });

  RunManifest& m = stack.manifest;
  m.seed = options.seed;
  m.hole = texture.hole();
  m.optics = cfg;
  m.region = region;
  m.plan = plan;
  for (const auto& event : plan.schedule) {
    m.images.push_back({event.index(), tile_file_name(event.index())});
  }
  m.truth = texture.defects();
  m.synth = SynthSettings{texture.background(), options.noise_sigma,
                          options.bit_depth, texture.pitch_um()};
  return stack;
}

}  // namespace borescan
