#pragma once

// Imaging-model calculators for the sight-pipe borescope.
//
// Units: lengths in mm, pixel equivalents in µm/pixel, angles in radians
// unless a function name says otherwise.

#include <numbers>

namespace borescan {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / kPi; }

/// Measured hole geometry.
struct HoleSpec {
  double radius_mm = 2.0;
  double depth_mm = 47.0;

  double diameter_mm() const noexcept { return 2.0 * radius_mm; }

  /// True inside the device envelope (4-6 mm bores, at most 47 mm deep).
  /// Computations accept any positive geometry.
  bool in_supported_range() const noexcept;

  void validate() const;

  friend bool operator==(const HoleSpec&, const HoleSpec&) = default;
};

/// Imaging-chain geometry and pixel equivalents.
struct OpticsConfig {
  double d_p_mm = 2.5;   // reflecting-plane effective diameter
  double d_w_mm = 2.0;   // effective image diameter on the image plane
  double l_w_mm = 15.0;  // image plane to eyepiece
  double l_n_mm = 230.0; // lens length
  double l_d_mm = 94.0;  // objective lens to reflecting plane
  double p_x_um = 2.16;
  double p_y_um = 2.16;

  double chain_length_mm() const noexcept { return l_w_mm + l_n_mm + l_d_mm; }

  void validate() const;

  friend bool operator==(const OpticsConfig&, const OpticsConfig&) = default;
};

/// Sight-pipe misalignment: tilt `angle_rad` about a point `lever_mm` from
/// the pipe end plus a lateral shift.
struct DeviationSpec {
  double lever_mm = 0.0;
  double angle_rad = 0.0;
  double shift_mm = 0.0;

  static DeviationSpec from_degrees(double lever_mm, double angle_deg,
                                    double shift_mm);

  void validate() const;
};

struct FovBounds {
  double min_mm;
  double max_mm;
};

/// Half of the angle subtended at the optical center by the usable image
/// diameter.
double fov_half_angle(const OpticsConfig& cfg);

/// Distance from the image plane to the optical center.
double image_plane_distance(const OpticsConfig& cfg);

/// Object-side field diameter for a hole of radius `r_mm`.
double object_extent(const OpticsConfig& cfg, double r_mm);

/// Arc length on the bore surface behind a chord of length `d_m_mm`.
double arc_expansion(double r_mm, double d_m_mm);

/// (arc − chord) / chord; the uncorrected flat-projection error.
double projection_error_ratio(double r_mm, double d_m_mm);

/// Combined reflecting-plane offset from tilt and shift.
double deviation_total(const DeviationSpec& dev);

FovBounds fov_bounds(double d_m_mm, double d_p_mm, double r_mm,
                     double p_total_mm);

double relative_fov_error(double d_m_mm, double d_p_mm, double r_mm,
                          double p_total_mm);

}  // namespace borescan
