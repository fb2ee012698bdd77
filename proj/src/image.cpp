#include "borescan/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "borescan/error.hpp"

namespace borescan {

TileImage::TileImage(int width, int height, int bit_depth, double p_x_um,
                     double p_y_um, TileIndex index)
    : width_(width),
      height_(height),
      bit_depth_(bit_depth),
      p_x_um_(p_x_um),
      p_y_um_(p_y_um),
      index_(index) {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::invalid_config, "image dimensions must be positive, got " +
                                          std::to_string(width) + "x" +
                                          std::to_string(height));
  }
  if (bit_depth != 8 && bit_depth != 16) {
    throw Error(Errc::invalid_config,
                "bit depth must be 8 or 16, got " + std::to_string(bit_depth));
  }
  if (!(p_x_um > 0.0) || !(p_y_um > 0.0)) {
    throw Error(Errc::invalid_config, "pixel equivalents must be > 0");
  }
  pixels_.assign(static_cast<std::size_t>(width) * height, 0);
}

void TileImage::fill(std::uint16_t value) {
  std::fill(pixels_.begin(), pixels_.end(), std::min(value, max_value()));
}

void TileImage::set_level(int x, int y, double value) {
  const double clamped = std::clamp(value, 0.0, double(max_value()));
  at(x, y) = static_cast<std::uint16_t>(std::lround(clamped));
}

}  // namespace borescan
