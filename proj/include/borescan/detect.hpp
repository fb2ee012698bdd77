#pragma once

// Defect segmentation and measurement on corrected tiles.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "borescan/image.hpp"

namespace borescan {

enum class Polarity { dark, bright };
enum class ThresholdMethod { fixed, otsu };
enum class Axis { horizontal, vertical };

struct ThresholdSpec {
  ThresholdMethod method = ThresholdMethod::fixed;
  double level = 0.5;  // fraction of full scale; fixed method only
  Polarity polarity = Polarity::dark;
};

class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool at(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool on = true) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = on ? 1 : 0;
  }
  std::size_t count() const noexcept;
  std::span<const std::uint8_t> data() const noexcept { return bits_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Threshold (in intensity levels) maximising between-class variance.
/// Pixels below the returned value form the dark class. Throws
/// degenerate_threshold when the histogram has a single populated bin.
double otsu_threshold(const TileImage& img);

/// Foreground = defect polarity side of the threshold.
BinaryMask binarize(const TileImage& img, const ThresholdSpec& spec);

/// Inclusive pixel rectangle.
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;
  int y1 = -1;

  int width() const noexcept { return x1 - x0 + 1; }
  int height() const noexcept { return y1 - y0 + 1; }
};

struct BlobRecord {
  int label = 0;
  std::size_t pixel_area = 0;
  double cx = 0.0;  // centroid column
  double cy = 0.0;  // centroid row
  PixelRect bbox;
  bool touches_border = false;
  TileIndex frame;  // tile the pixel coordinates refer to

  // Filled by blob_metrics.
  double equivalent_diameter_mm = 0.0;
  double physical_area_mm2 = 0.0;
};

/// Label image (0 = background, blob i carries label i + 1) and blobs in
/// raster order of their first pixel.
struct Labeling {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;
  std::vector<BlobRecord> blobs;

  std::int32_t at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
};

inline constexpr int kDefaultMinArea = 9;

/// 8-connected components; components smaller than `min_area` pixels are
/// dropped (their pixels relabelled background).
Labeling connected_components(const BinaryMask& mask,
                              int min_area = kDefaultMinArea);

/// Adds physical area and equivalent-circle diameter.
BlobRecord blob_metrics(BlobRecord blob, double p_x_um, double p_y_um);

/// Centroid separation in mm. Both blobs must share a frame.
double centroid_distance(const BlobRecord& a, const BlobRecord& b,
                         double p_x_um, double p_y_um);

struct LineMeasurement {
  std::vector<double> widths_mm;
  double mean_width_mm = 0.0;
  int segment_count = 0;
};

inline constexpr int kDefaultSegmentLength = 64;

/// Width of the largest component, which must run along `axis`. The
/// component is cut into `segment_len` slices along the axis; each slice
/// reports its mean perpendicular extent. `pitch_um` is the pixel size
/// across the line.
LineMeasurement line_width(const BinaryMask& mask, Axis axis, int segment_len,
                           double pitch_um);

/// Same measurement for one labelled blob, optionally restricted to the
/// slice range [from, to) along the axis.
LineMeasurement line_width(const Labeling& labeling, const BlobRecord& blob,
                           Axis axis, int segment_len, double pitch_um,
                           std::optional<std::pair<int, int>> range = {});

}  // namespace borescan
