#pragma once

// Shared scene builders for unit and acceptance tests.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "borescan/detect.hpp"
#include "borescan/image.hpp"

namespace fixtures {

/// 8-bit texture window made of six random sinusoids with frequencies up
/// to `max_cycles_per_px`. Amplitude falls with frequency
/// (A = 60 / (1 + 20 f)), scaled so the sum stays within ±100 levels.
borescan::TileImage band_limited_texture(int width, int height, double p_x_um,
                                         std::uint64_t seed,
                                         double max_cycles_per_px = 0.1);

borescan::BinaryMask random_mask(int width, int height, double density,
                                 std::mt19937_64& rng);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace fixtures
