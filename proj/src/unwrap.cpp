#include "borescan/unwrap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "borescan/error.hpp"
#include "borescan/geometry.hpp"

namespace borescan {

namespace {

// Bore radius expressed in pixels of size p_x.
double radius_px(double r_mm, double p_x_um) {
  if (!(r_mm > 0.0) || !(p_x_um > 0.0)) {
    throw Error(Errc::domain, "radius and pixel equivalent must be > 0");
  }
  return r_mm * 1000.0 / p_x_um;
}

void check_tile_fits(int width, double r_mm, double p_x_um) {
  if (width <= 0) {
    throw Error(Errc::invalid_config, "tile width must be positive");
  }
  if (!(0.5 * width * p_x_um < r_mm * 1000.0)) {
    throw Error(Errc::invalid_config,
                "tile of " + std::to_string(width) +
                    " px is wider than the visible arc of the bore");
  }
}

// Column interpolation setup shared by correct_tile and forward_project.
struct ColumnTap {
  int x0 = 0;
  int x1 = 0;
  double frac = 0.0;
  bool valid = false;
};

ColumnTap make_tap(double x, int width) {
  // Remap arithmetic can land a hair outside the last column.
  constexpr double kSlack = 1e-9;
  ColumnTap tap;
  if (x < -kSlack || x > (width - 1) + kSlack) {
    return tap;
  }
  x = std::clamp(x, 0.0, double(width - 1));
  tap.x0 = static_cast<int>(std::floor(x));
  if (tap.x0 >= width - 1) {
    tap.x0 = std::max(width - 2, 0);
  }
  tap.x1 = std::min(tap.x0 + 1, width - 1);
  tap.frac = x - tap.x0;
  tap.valid = true;
  return tap;
}

TileImage resample_columns(const TileImage& src, int out_width,
                           const std::vector<ColumnTap>& taps) {
  TileImage out(out_width, src.height(), src.bit_depth(), src.p_x_um(),
                src.p_y_um(), src.index());
  for (int x = 0; x < out_width; ++x) {
    if (!taps[x].valid) {
      out.add_sentinel_column(x);
    }
  }
  for (int y = 0; y < src.height(); ++y) {
    auto row = src.row(y);
    for (int x = 0; x < out_width; ++x) {
      const ColumnTap& t = taps[x];
      if (!t.valid) {
        out.at(x, y) = 0;
        continue;
      }
      const double v = row[t.x0] * (1.0 - t.frac) + row[t.x1] * t.frac;
      out.set_level(x, y, v);
    }
  }
  return out;
}

}  // namespace

double pixel_to_arc(double k, double r_mm, double p_x_um) {
  const double radius = radius_px(r_mm, p_x_um);
  const double ratio = k / radius;
  if (!(std::abs(ratio) < 1.0)) {
    throw Error(Errc::out_of_domain,
                "pixel offset " + std::to_string(k) +
                    " lies beyond the visible tangent limit");
  }
  return radius * std::asin(ratio);
}

double arc_to_pixel(double m, double r_mm, double p_x_um) {
  const double radius = radius_px(r_mm, p_x_um);
  const double angle = m / radius;
  if (!(std::abs(angle) <= kPi / 2.0)) {
    throw Error(Errc::out_of_domain,
                "arc offset " + std::to_string(m) + " exceeds a quarter turn");
  }
  return radius * std::sin(angle);
}

double bilinear_sample(const TileImage& img, double x, double y) {
  const int w = img.width();
  const int h = img.height();
  if (!(x >= 0.0 && x <= w - 1 && y >= 0.0 && y <= h - 1)) {
    throw Error(Errc::out_of_bounds, "sample (" + std::to_string(x) + ", " +
                                         std::to_string(y) +
                                         ") outside image");
  }
  int x0 = static_cast<int>(std::floor(x));
  int y0 = static_cast<int>(std::floor(y));
  if (x0 >= w - 1) x0 = std::max(w - 2, 0);
  if (y0 >= h - 1) y0 = std::max(h - 2, 0);
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  return img.at(x1, y1) * fx * fy + img.at(x1, y0) * fx * (1.0 - fy) +
         img.at(x0, y1) * (1.0 - fx) * fy +
         img.at(x0, y0) * (1.0 - fx) * (1.0 - fy);
}

RemapTable::RemapTable(int width, double r_mm, double p_x_um) {
  check_tile_fits(width, r_mm, p_x_um);
  center_ = 0.5 * (width - 1);
  offsets_.resize(width);
  for (int column = 0; column < width; ++column) {
    offsets_[column] = arc_to_pixel(column - center_, r_mm, p_x_um);
  }
}

RemapTable build_remap(int width, double r_mm, double p_x_um) {
  return RemapTable(width, r_mm, p_x_um);
}

TileImage correct_tile(const TileImage& img, double r_mm) {
  return correct_tile(img, build_remap(img.width(), r_mm, img.p_x_um()));
}

TileImage correct_tile(const TileImage& img, const RemapTable& remap) {
  if (remap.width() != img.width()) {
    throw Error(Errc::invalid_config, "remap table width does not match tile");
  }
  std::vector<ColumnTap> taps(img.width());
  for (int x = 0; x < img.width(); ++x) {
    taps[x] = make_tap(remap.source_column(x), img.width());
  }
  return resample_columns(img, img.width(), taps);
}

TileImage forward_project(const TileImage& texture_window, double r_mm,
                          int out_width) {
  const int in_width = texture_window.width();
  if (out_width <= 0) {
    out_width = in_width;
  }
  check_tile_fits(out_width, r_mm, texture_window.p_x_um());
  const double out_center = 0.5 * (out_width - 1);
  const double in_center = 0.5 * (in_width - 1);
  std::vector<ColumnTap> taps(out_width);
  for (int x = 0; x < out_width; ++x) {
    const double m =
        pixel_to_arc(x - out_center, r_mm, texture_window.p_x_um());
    taps[x] = make_tap(in_center + m, in_width);
  }
  return resample_columns(texture_window, out_width, taps);
}

int forward_margin(int out_width, double r_mm, double p_x_um) {
  check_tile_fits(out_width, r_mm, p_x_um);
  const double half = 0.5 * (out_width - 1);
  const double edge = pixel_to_arc(half, r_mm, p_x_um);
  return static_cast<int>(std::ceil(edge - half)) + 1;
}

}  // namespace borescan
