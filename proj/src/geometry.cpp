#include "borescan/geometry.hpp"

#include <cmath>
#include <string>

#include "borescan/error.hpp"

namespace borescan {

namespace {

void require_positive(double value, const char* name, Errc code) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(code, std::string(name) + " must be > 0, got " +
                          std::to_string(value));
  }
}

}  // namespace

bool HoleSpec::in_supported_range() const noexcept {
  const double d = diameter_mm();
  return d >= 4.0 && d <= 6.0 && depth_mm <= 47.0;
}

void HoleSpec::validate() const {
  require_positive(radius_mm, "hole.radius_mm", Errc::invalid_config);
  require_positive(depth_mm, "hole.depth_mm", Errc::invalid_config);
}

void OpticsConfig::validate() const {
  require_positive(d_p_mm, "optics.d_p_mm", Errc::invalid_config);
  require_positive(d_w_mm, "optics.d_w_mm", Errc::invalid_config);
  require_positive(l_w_mm, "optics.l_w_mm", Errc::invalid_config);
  require_positive(l_n_mm, "optics.l_n_mm", Errc::invalid_config);
  require_positive(l_d_mm, "optics.l_d_mm", Errc::invalid_config);
  require_positive(p_x_um, "optics.p_x_um", Errc::invalid_config);
  require_positive(p_y_um, "optics.p_y_um", Errc::invalid_config);
}

DeviationSpec DeviationSpec::from_degrees(double lever_mm, double angle_deg,
                                          double shift_mm) {
  DeviationSpec dev{lever_mm, deg_to_rad(angle_deg), shift_mm};
  dev.validate();
  return dev;
}

void DeviationSpec::validate() const {
  if (!(lever_mm >= 0.0)) {
    throw Error(Errc::domain, "deviation lever must be >= 0");
  }
  if (!(shift_mm >= 0.0)) {
    throw Error(Errc::domain, "deviation shift must be >= 0");
  }
  if (!(angle_rad >= 0.0 && angle_rad < kPi / 2.0)) {
    throw Error(Errc::domain, "deviation angle must be in [0, 90) degrees");
  }
}

double fov_half_angle(const OpticsConfig& cfg) {
  const double length = cfg.chain_length_mm();
  if (!(length > 0.0)) {
    throw Error(Errc::invalid_config, "optical chain length must be > 0");
  }
  return std::atan((cfg.d_w_mm + cfg.d_p_mm) / (2.0 * length));
}

double image_plane_distance(const OpticsConfig& cfg) {
  const double aperture = cfg.d_w_mm + cfg.d_p_mm;
  if (!(aperture > 0.0)) {
    throw Error(Errc::degenerate_optics, "d_w + d_p must be > 0");
  }
  return cfg.d_w_mm * cfg.chain_length_mm() / aperture;
}

double object_extent(const OpticsConfig& cfg, double r_mm) {
  if (!(r_mm >= 0.0)) {
    throw Error(Errc::domain, "object radius must be >= 0");
  }
  const double length = cfg.chain_length_mm();
  if (!(length > 0.0)) {
    throw Error(Errc::invalid_config, "optical chain length must be > 0");
  }
  return cfg.d_p_mm + r_mm * (cfg.d_w_mm + cfg.d_p_mm) / length;
}

double arc_expansion(double r_mm, double d_m_mm) {
  if (!(r_mm > 0.0)) {
    throw Error(Errc::domain, "radius must be > 0");
  }
  if (!(d_m_mm > 0.0)) {
    throw Error(Errc::domain, "chord must be > 0");
  }
  if (d_m_mm > 2.0 * r_mm) {
    throw Error(Errc::domain, "chord exceeds hole diameter");
  }
  return 2.0 * r_mm * std::asin(d_m_mm / (2.0 * r_mm));
}

double projection_error_ratio(double r_mm, double d_m_mm) {
  return (arc_expansion(r_mm, d_m_mm) - d_m_mm) / d_m_mm;
}

double deviation_total(const DeviationSpec& dev) {
  return std::hypot(dev.lever_mm * std::sin(dev.angle_rad), dev.shift_mm);
}

FovBounds fov_bounds(double d_m_mm, double d_p_mm, double r_mm,
                     double p_total_mm) {
  if (!(r_mm > 0.0)) {
    throw Error(Errc::domain, "radius must be > 0");
  }
  if (d_m_mm < d_p_mm) {
    throw Error(Errc::domain, "object extent must not be below d_p");
  }
  const double half_range = p_total_mm / r_mm * (d_m_mm - d_p_mm);
  return {d_m_mm - half_range, d_m_mm + half_range};
}

double relative_fov_error(double d_m_mm, double d_p_mm, double r_mm,
                          double p_total_mm) {
  if (!(d_m_mm > 0.0)) {
    throw Error(Errc::domain, "object extent must be > 0");
  }
  if (!(r_mm > 0.0)) {
    throw Error(Errc::domain, "radius must be > 0");
  }
  return p_total_mm / r_mm * (1.0 - d_p_mm / d_m_mm);
}

}  // namespace borescan
