#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace fixtures {

borescan::TileImage band_limited_texture(int width, int height, double p_x_um,
                                         std::uint64_t seed,
                                         double max_cycles_per_px) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> freq(0.005, max_cycles_per_px);
  std::uniform_real_distribution<double> tilt(0.0, 0.05);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  struct Wave {
    double fx, fy, phi, amp;
  };
  std::vector<Wave> waves(6);
  double total = 0.0;
  for (auto& w : waves) {
    w.fx = freq(rng);
    w.fy = tilt(rng);
    w.phi = phase(rng);
    w.amp = 60.0 / (1.0 + 20.0 * w.fx);
    total += w.amp;
  }
  const double scale = std::min(1.0, 100.0 / total);

  borescan::TileImage img(width, height, 8, p_x_um, p_x_um);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v = 128.0;
      for (const auto& w : waves) {
        v += scale * w.amp *
             std::sin(2.0 * std::numbers::pi * (w.fx * x + w.fy * y) + w.phi);
      }
      img.at(x, y) = static_cast<std::uint16_t>(std::lround(v));
    }
  }
  return img;
}

borescan::BinaryMask random_mask(int width, int height, double density,
                                 std::mt19937_64& rng) {
  std::bernoulli_distribution on(density);
  borescan::BinaryMask mask(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) mask.set(x, y, on(rng));
  }
  return mask;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("borescan_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
