#include "borescan/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "borescan/error.hpp"

namespace borescan {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kKnownKeys = {
    "hole.radius_mm",     "hole.depth_mm",      "optics.d_p_mm",
    "optics.d_w_mm",      "optics.l_w_mm",      "optics.l_n_mm",
    "optics.l_d_mm",      "optics.p_x_um",      "optics.p_y_um",
    "region.f_x_mm",      "region.f_y_mm",      "region.margin_mm",
    "detect.threshold",   "detect.level",       "detect.polarity",
    "detect.min_area",    "detect.segment_len", "detect.line_elongation",
    "detect.tol_z_mm",    "detect.tol_arc_mm",  "synth.background",
    "synth.contrast",     "synth.noise_sigma",  "synth.bit_depth",
    "synth.seed",
};

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  template <typename T>
  T required(const std::string& key) const {
    if (!tree_.get_optional<std::string>(key)) {
      throw Error(Errc::parse, "missing required key '" + key + "'");
    }
    return get<T>(key);
  }

  template <typename T>
  T optional(const std::string& key, T fallback) const {
    if (!tree_.get_optional<std::string>(key)) return fallback;
    return get<T>(key);
  }

 private:
  template <typename T>
  T get(const std::string& key) const {
    try {
      return tree_.get<T>(key);
    } catch (const pt::ptree_error&) {
      throw Error(Errc::parse, "bad value for key '" + key + "': '" +
                                   tree_.get<std::string>(key) + "'");
    }
  }

  const pt::ptree& tree_;
};

}  // namespace

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(Errc::parse, std::string("config syntax: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw Error(Errc::parse, "key '" + section + "' must be inside a section");
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (!kKnownKeys.contains(full)) {
        throw Error(Errc::parse, "unknown key '" + full + "'");
      }
    }
  }

  const Reader r(tree);
  RunConfig cfg;
  cfg.hole.radius_mm = r.required<double>("hole.radius_mm");
  cfg.hole.depth_mm = r.required<double>("hole.depth_mm");

  cfg.optics.d_p_mm = r.required<double>("optics.d_p_mm");
  cfg.optics.d_w_mm = r.required<double>("optics.d_w_mm");
  cfg.optics.l_w_mm = r.required<double>("optics.l_w_mm");
  cfg.optics.l_n_mm = r.required<double>("optics.l_n_mm");
  cfg.optics.l_d_mm = r.required<double>("optics.l_d_mm");
  cfg.optics.p_x_um = r.required<double>("optics.p_x_um");
  cfg.optics.p_y_um = r.required<double>("optics.p_y_um");

  cfg.region.f_x_mm = r.required<double>("region.f_x_mm");
  cfg.region.f_y_mm = r.required<double>("region.f_y_mm");
  cfg.region.margin_mm = r.optional("region.margin_mm", cfg.region.margin_mm);

  DetectConfig& d = cfg.detect;
  const auto method = r.optional<std::string>("detect.threshold", "fixed");
  if (method == "fixed") {
    d.threshold.method = ThresholdMethod::fixed;
  } else if (method == "otsu") {
    d.threshold.method = ThresholdMethod::otsu;
  } else {
    throw Error(Errc::parse, "detect.threshold must be 'fixed' or 'otsu'");
  }
  d.threshold.level = r.optional("detect.level", d.threshold.level);
  const auto polarity = r.optional<std::string>("detect.polarity", "dark");
  if (polarity == "dark") {
    d.threshold.polarity = Polarity::dark;
  } else if (polarity == "bright") {
    d.threshold.polarity = Polarity::bright;
  } else {
    throw Error(Errc::parse, "detect.polarity must be 'dark' or 'bright'");
  }
  d.min_area = r.optional("detect.min_area", d.min_area);
  d.segment_len = r.optional("detect.segment_len", d.segment_len);
  d.line_elongation = r.optional("detect.line_elongation", d.line_elongation);
  d.tol_z_mm = r.optional("detect.tol_z_mm", d.tol_z_mm);
  d.tol_arc_mm = r.optional("detect.tol_arc_mm", d.tol_arc_mm);

  SynthConfig& s = cfg.synth;
  s.background = r.optional("synth.background", s.background);
  s.contrast = r.optional("synth.contrast", s.contrast);
  s.noise_sigma = r.optional("synth.noise_sigma", s.noise_sigma);
  s.bit_depth = r.optional("synth.bit_depth", s.bit_depth);
  s.seed = r.optional<std::uint64_t>("synth.seed", s.seed);

  cfg.hole.validate();
  cfg.optics.validate();
  cfg.region.validate();
  if (s.bit_depth != 8 && s.bit_depth != 16) {
    throw Error(Errc::invalid_config, "synth.bit_depth must be 8 or 16");
  }
  if (d.segment_len <= 0 || d.min_area < 1) {
    throw Error(Errc::invalid_config, "detect.segment_len and detect.min_area must be positive");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::parse, "cannot open config " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string default_config_text() {
  return R"(; borescan run configuration. Units are fixed by the key suffix.

[hole]
radius_mm = 2.0
depth_mm = 47.0

[optics]
; reflecting-plane effective diameter
d_p_mm = 2.5
; usable image diameter on the image plane
d_w_mm = 2.0
; image plane to eyepiece
l_w_mm = 15.0
; lens length
l_n_mm = 230.0
; objective lens to reflecting plane
l_d_mm = 94.0
; horizontal pixel equivalent, um/pixel
p_x_um = 2.16
; vertical pixel equivalent, um/pixel
p_y_um = 2.16

[region]
; measured arc extent per capture
f_x_mm = 1.5
; measured depth extent per capture
f_y_mm = 1.5
; capture reaches this far beyond the region on each side
margin_mm = 0.15

[detect]
; fixed | otsu
threshold = fixed
; fixed threshold, fraction of full scale
level = 0.5
; dark | bright defects
polarity = dark
; px
min_area = 9
; px per line-width segment
segment_len = 64
line_elongation = 3.0
; duplicate merge tolerances
tol_z_mm = 0.05
tol_arc_mm = 0.05

[synth]
; fraction of full scale
background = 0.7
; default defect contrast, fraction of full scale
contrast = -0.4
; fraction of full scale
noise_sigma = 0.0
bit_depth = 8
seed = 0
)";
}

}  // namespace borescan
