#include "borescan/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "borescan/error.hpp"
#include "borescan/geometry.hpp"

namespace borescan {

namespace {

// Union-find over provisional labels; smaller root wins so the final
// numbering follows raster order.
class DisjointSet {
 public:
  std::int32_t make() {
    parent_.push_back(static_cast<std::int32_t>(parent_.size()));
    return parent_.back();
  }
  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

 private:
  std::vector<std::int32_t> parent_;
};

}  // namespace

BinaryMask::BinaryMask(int width, int height)
    : width_(width),
      height_(height),
      bits_(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), 0) {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::invalid_config, "mask dimensions must be positive");
  }
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

double otsu_threshold(const TileImage& img) {
  std::vector<double> hist(static_cast<std::size_t>(img.max_value()) + 1, 0.0);
  for (const auto v : img.pixels()) {
    hist[v] += 1.0;
  }
  const double total = static_cast<double>(img.pixels().size());
  double sum_all = 0.0;
  for (std::size_t t = 0; t < hist.size(); ++t) {
    sum_all += t * hist[t];
  }

  double best = 0.0;
  std::size_t first = 0;
  std::size_t last = 0;
  double weight0 = 0.0;
  double sum0 = 0.0;
  for (std::size_t t = 0; t + 1 < hist.size(); ++t) {
    weight0 += hist[t];
    sum0 += t * hist[t];
    const double weight1 = total - weight0;
    if (weight0 == 0.0 || weight1 == 0.0) continue;
    const double mean0 = sum0 / weight0;
    const double mean1 = (sum_all - sum0) / weight1;
    const double between = weight0 * weight1 * (mean0 - mean1) * (mean0 - mean1);
    // Relative tolerance keeps exact plateaus together.
    if (between > best * (1.0 + 1e-12)) {
      best = between;
      first = last = t;
    } else if (best > 0.0 && between >= best * (1.0 - 1e-12)) {
      last = t;
    }
  }
  if (best <= 0.0) {
    throw Error(Errc::degenerate_threshold,
                "histogram has a single level; Otsu threshold undefined");
  }
  // Class 0 is [0, t]; the cut sits between bins, centred on the plateau.
  return 0.5 * double(first + last) + 0.5;
}

BinaryMask binarize(const TileImage& img, const ThresholdSpec& spec) {
  const double threshold = spec.method == ThresholdMethod::otsu
                               ? otsu_threshold(img)
                               : spec.level * img.max_value();
  BinaryMask mask(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double v = img.at(x, y);
      const bool fg = spec.polarity == Polarity::dark ? v < threshold : v > threshold;
      if (fg) mask.set(x, y);
    }
  }
  return mask;
}

Labeling connected_components(const BinaryMask& mask, int min_area) {
  const int w = mask.width();
  const int h = mask.height();
  Labeling out;
  out.width = w;
  out.height = h;
  out.labels.assign(static_cast<std::size_t>(w) * h, 0);
  if (w == 0 || h == 0) return out;

  // Pass 1: provisional labels (1-based), equivalences via union-find on
  // the previously visited 8-neighbours (W, NW, N, NE).
  DisjointSet sets;
  sets.make();  // label 0 = background
  auto label_at = [&](int x, int y) -> std::int32_t& {
    return out.labels[static_cast<std::size_t>(y) * w + x];
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      std::int32_t current = 0;
      const int nx[4] = {x - 1, x - 1, x, x + 1};
      const int ny[4] = {y, y - 1, y - 1, y - 1};
      for (int i = 0; i < 4; ++i) {
        if (nx[i] < 0 || nx[i] >= w || ny[i] < 0) continue;
        const std::int32_t n = label_at(nx[i], ny[i]);
        if (n == 0) continue;
        if (current == 0) {
          current = n;
        } else if (n != current) {
          sets.unite(current, n);
        }
      }
      label_at(x, y) = current != 0 ? current : sets.make();
    }
  }

  // Pass 2: resolve roots and accumulate statistics per root.
  struct Accum {
    std::size_t area = 0;
    double sx = 0.0;
    double sy = 0.0;
    PixelRect box{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), -1, -1};
    bool border = false;
  };
  std::vector<Accum> accum;
  std::vector<std::int32_t> slot_of_root;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int32_t& l = label_at(x, y);
      if (l == 0) continue;
      const std::int32_t root = sets.find(l);
      if (static_cast<std::size_t>(root) >= slot_of_root.size()) {
        slot_of_root.resize(root + 1, -1);
      }
      if (slot_of_root[root] < 0) {
        slot_of_root[root] = static_cast<std::int32_t>(accum.size());
        accum.push_back({});
      }
      const std::int32_t slot = slot_of_root[root];
      Accum& a = accum[slot];
      a.area += 1;
      a.sx += x;
      a.sy += y;
      a.box.x0 = std::min(a.box.x0, x);
      a.box.y0 = std::min(a.box.y0, y);
      a.box.x1 = std::max(a.box.x1, x);
      a.box.y1 = std::max(a.box.y1, y);
      a.border = a.border || x == 0 || y == 0 || x == w - 1 || y == h - 1;
      l = slot + 1;
    }
  }

  // Drop small components and compact the numbering.
  std::vector<std::int32_t> final_label(accum.size() + 1, 0);
  for (std::size_t s = 0; s < accum.size(); ++s) {
    const Accum& a = accum[s];
    if (a.area < static_cast<std::size_t>(std::max(min_area, 1))) continue;
    BlobRecord blob;
    blob.label = static_cast<int>(out.blobs.size()) + 1;
    blob.pixel_area = a.area;
    blob.cx = a.sx / a.area;
    blob.cy = a.sy / a.area;
    blob.bbox = a.box;
    blob.touches_border = a.border;
    final_label[s + 1] = blob.label;
    out.blobs.push_back(blob);
  }
  for (auto& l : out.labels) {
    l = final_label[l];
  }
  return out;
}

BlobRecord blob_metrics(BlobRecord blob, double p_x_um, double p_y_um) {
  blob.physical_area_mm2 = blob.pixel_area * p_x_um * p_y_um * 1e-6;
  blob.equivalent_diameter_mm = 2.0 * std::sqrt(blob.physical_area_mm2 / kPi);
  return blob;
}

double centroid_distance(const BlobRecord& a, const BlobRecord& b,
                         double p_x_um, double p_y_um) {
  if (!(a.frame == b.frame)) {
    throw Error(Errc::frame_mismatch, "blobs come from different tiles");
  }
  const double dx = (a.cx - b.cx) * p_x_um / 1000.0;
  const double dy = (a.cy - b.cy) * p_y_um / 1000.0;
  return std::hypot(dx, dy);
}

LineMeasurement line_width(const Labeling& labeling, const BlobRecord& blob,
                           Axis axis, int segment_len, double pitch_um,
                           std::optional<std::pair<int, int>> range) {
  if (segment_len <= 0) {
    throw Error(Errc::domain, "segment length must be positive");
  }
  const bool vertical = axis == Axis::vertical;
  const int along = vertical ? blob.bbox.height() : blob.bbox.width();
  const int across = vertical ? blob.bbox.width() : blob.bbox.height();
  if (blob.pixel_area == 0 || along < across) {
    throw Error(Errc::not_found, "no line-like component along the requested axis");
  }
  int from = vertical ? blob.bbox.y0 : blob.bbox.x0;
  int to = (vertical ? blob.bbox.y1 : blob.bbox.x1) + 1;
  if (range) {
    from = std::max(from, range->first);
    to = std::min(to, range->second);
  }

  // Perpendicular extent of the blob at each slice along the axis.
  std::vector<int> extent;
  extent.reserve(std::max(0, to - from));
  for (int s = from; s < to; ++s) {
    int count = 0;
    if (vertical) {
      for (int x = blob.bbox.x0; x <= blob.bbox.x1; ++x) count += labeling.at(x, s) == blob.label;
    } else {
      for (int y = blob.bbox.y0; y <= blob.bbox.y1; ++y) count += labeling.at(s, y) == blob.label;
    }
    extent.push_back(count);
  }

  LineMeasurement out;
  for (std::size_t start = 0; start < extent.size(); start += segment_len) {
    const std::size_t stop = std::min(extent.size(), start + segment_len);
    int sum = 0;
    int slices = 0;
    for (std::size_t i = start; i < stop; ++i) {
      if (extent[i] == 0) continue;
      sum += extent[i];
      ++slices;
    }
    if (slices == 0) continue;
    out.widths_mm.push_back(double(sum) / slices * pitch_um / 1000.0);
  }
  if (out.widths_mm.empty()) {
    throw Error(Errc::not_found, "line component has no pixels in range");
  }
  out.segment_count = static_cast<int>(out.widths_mm.size());
  out.mean_width_mm =
      std::accumulate(out.widths_mm.begin(), out.widths_mm.end(), 0.0) /
      out.segment_count;
  return out;
}

LineMeasurement line_width(const BinaryMask& mask, Axis axis, int segment_len,
                           double pitch_um) {
  const Labeling labeling = connected_components(mask, 1);
  if (labeling.blobs.empty()) {
    throw Error(Errc::not_found, "mask has no foreground");
  }
  const auto largest = std::max_element(
      labeling.blobs.begin(), labeling.blobs.end(),
      [](const BlobRecord& a, const BlobRecord& b) { return a.pixel_area < b.pixel_area; });
  return line_width(labeling, *largest, axis, segment_len, pitch_um);
}

}  // namespace borescan
