#pragma once

// Binary portable graymap (P5). 8-bit when maxval < 256, otherwise 16-bit
// big-endian samples.

#include <filesystem>
#include <string>

#include "borescan/image.hpp"

namespace borescan {

std::string encode_pgm(const TileImage& img);

/// Pixel equivalents are not stored in PGM; the caller supplies them.
TileImage decode_pgm(const std::string& bytes, double p_x_um, double p_y_um,
                     TileIndex index = {});

void write_pgm(const std::filesystem::path& path, const TileImage& img);
TileImage read_pgm(const std::filesystem::path& path, double p_x_um,
                   double p_y_um, TileIndex index = {});

}  // namespace borescan
