#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace borescan {

/// Position of a capture in the scan: j counts depth steps, k rotations.
struct TileIndex {
  int j = 0;
  int k = 0;

  friend bool operator==(const TileIndex&, const TileIndex&) = default;
  friend auto operator<=>(const TileIndex&, const TileIndex&) = default;
};

/// Grayscale capture (or corrected tile) with its pixel equivalents.
///
/// Pixels are stored row-major as 16-bit words regardless of bit depth;
/// values never exceed max_value().
class TileImage {
 public:
  TileImage() = default;
  TileImage(int width, int height, int bit_depth, double p_x_um,
            double p_y_um, TileIndex index = {});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int bit_depth() const noexcept { return bit_depth_; }
  std::uint16_t max_value() const noexcept {
    return static_cast<std::uint16_t>((1u << bit_depth_) - 1u);
  }
  double p_x_um() const noexcept { return p_x_um_; }
  double p_y_um() const noexcept { return p_y_um_; }
  TileIndex index() const noexcept { return index_; }
  void set_index(TileIndex index) noexcept { index_ = index; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint16_t at(int x, int y) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint16_t& at(int x, int y) {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const std::uint16_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint16_t> pixels() noexcept { return pixels_; }
  std::span<const std::uint16_t> row(int y) const noexcept {
    return std::span(pixels_).subspan(static_cast<std::size_t>(y) * width_,
                                      width_);
  }

  void fill(std::uint16_t value);

  /// Writes `value` (in intensity levels) rounded and clamped to the range.
  void set_level(int x, int y, double value);

  /// Columns that were filled with the sentinel value because their source
  /// fell outside the input.
  const std::vector<int>& sentinel_columns() const noexcept {
    return sentinel_columns_;
  }
  void add_sentinel_column(int column) { sentinel_columns_.push_back(column); }

  friend bool operator==(const TileImage&, const TileImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int bit_depth_ = 8;
  double p_x_um_ = 1.0;
  double p_y_um_ = 1.0;
  TileIndex index_;
  std::vector<std::uint16_t> pixels_;
  std::vector<int> sentinel_columns_;
};

}  // namespace borescan
