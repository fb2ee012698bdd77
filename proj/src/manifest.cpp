#include "borescan/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "borescan/error.hpp"

namespace borescan {

using nlohmann::json;

namespace {

json hole_json(const HoleSpec& h) {
  return {{"radius_mm", h.radius_mm}, {"depth_mm", h.depth_mm}};
}

HoleSpec hole_from(const json& j) {
  return {j.at("radius_mm").get<double>(), j.at("depth_mm").get<double>()};
}

json optics_json(const OpticsConfig& o) {
  return {{"d_p_mm", o.d_p_mm}, {"d_w_mm", o.d_w_mm}, {"l_w_mm", o.l_w_mm},
          {"l_n_mm", o.l_n_mm}, {"l_d_mm", o.l_d_mm}, {"p_x_um", o.p_x_um},
          {"p_y_um", o.p_y_um}};
}

OpticsConfig optics_from(const json& j) {
  OpticsConfig o;
  o.d_p_mm = j.at("d_p_mm").get<double>();
  o.d_w_mm = j.at("d_w_mm").get<double>();
  o.l_w_mm = j.at("l_w_mm").get<double>();
  o.l_n_mm = j.at("l_n_mm").get<double>();
  o.l_d_mm = j.at("l_d_mm").get<double>();
  o.p_x_um = j.at("p_x_um").get<double>();
  o.p_y_um = j.at("p_y_um").get<double>();
  return o;
}

json region_json(const EffectiveRegion& r) {
  return {{"f_x_mm", r.f_x_mm}, {"f_y_mm", r.f_y_mm}, {"margin_mm", r.margin_mm}};
}

EffectiveRegion region_from(const json& j) {
  return {j.at("f_x_mm").get<double>(), j.at("f_y_mm").get<double>(),
          j.value("margin_mm", EffectiveRegion{}.margin_mm)};
}

json plan_json(const ScanPlan& p) {
  json schedule = json::array();
  for (const auto& e : p.schedule) {
    schedule.push_back({{"order", e.order},
                        {"j", e.j},
                        {"k", e.k},
                        {"z_mm", e.z_mm},
                        {"theta_deg", e.theta_deg}});
  }
  return {{"n_rot", p.n_rot},
          {"n_depth", p.n_depth},
          {"alpha_deg", p.alpha_deg},
          {"step_mm", p.step_mm},
          {"last_tile_overlap", p.last_tile_overlap},
          {"schedule", schedule}};
}

ScanPlan plan_from(const json& j) {
  ScanPlan p;
  p.n_rot = j.at("n_rot").get<int>();
  p.n_depth = j.at("n_depth").get<int>();
  p.alpha_deg = j.at("alpha_deg").get<double>();
  p.step_mm = j.at("step_mm").get<double>();
  p.last_tile_overlap = j.at("last_tile_overlap").get<bool>();
  for (const auto& e : j.at("schedule")) {
    p.schedule.push_back({e.at("order").get<int>(), e.at("j").get<int>(),
                          e.at("k").get<int>(), e.at("z_mm").get<double>(),
                          e.at("theta_deg").get<double>()});
  }
  return p;
}

json defect_json(const DefectSpec& d) {
  json j = {{"kind", d.kind == DefectKind::disc ? "disc" : "line"},
            {"z_mm", d.z_mm},
            {"beta_deg", d.beta_deg},
            {"size_mm", d.size_mm},
            {"contrast", d.contrast}};
  if (d.kind == DefectKind::line) {
    j["length_mm"] = d.length_mm;
    j["axis"] = d.axis == LineAxis::axial ? "axial" : "circumferential";
  }
  if (!d.group.empty()) {
    j["group"] = d.group;
  }
  return j;
}

DefectSpec defect_from(const json& j) {
  DefectSpec d;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "disc") {
    d.kind = DefectKind::disc;
  } else if (kind == "line") {
    d.kind = DefectKind::line;
  } else {
    throw Error(Errc::parse, "unknown defect kind '" + kind + "'");
  }
  d.z_mm = j.at("z_mm").get<double>();
  d.beta_deg = j.at("beta_deg").get<double>();
  d.size_mm = j.at("size_mm").get<double>();
  d.contrast = j.value("contrast", DefectSpec{}.contrast);
  d.length_mm = j.value("length_mm", 0.0);
  const auto axis = j.value("axis", std::string("axial"));
  if (axis == "axial") {
    d.axis = LineAxis::axial;
  } else if (axis == "circumferential") {
    d.axis = LineAxis::circumferential;
  } else {
    throw Error(Errc::parse, "unknown line axis '" + axis + "'");
  }
  d.group = j.value("group", std::string());
  return d;
}

json defects_json(const std::vector<DefectSpec>& defects) {
  json arr = json::array();
  for (const auto& d : defects) arr.push_back(defect_json(d));
  return arr;
}

std::vector<DefectSpec> defects_from(const json& arr) {
  std::vector<DefectSpec> out;
  for (const auto& j : arr) out.push_back(defect_from(j));
  return out;
}

template <typename F>
auto parse_guard(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Errc::parse, e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::parse, "cannot open manifest " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string tile_file_name(TileIndex index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "tile_j%03d_k%03d.pgm", index.j, index.k);
  return buf;
}

void validate_manifest(const RunManifest& m) {
  std::map<TileIndex, int> seen;
  for (const auto& img : m.images) {
    if (!m.plan.contains(img.index)) {
      throw Error(Errc::parse, "image " + img.file + " is not in the plan");
    }
    if (++seen[img.index] > 1) {
      throw Error(Errc::parse, "duplicate image entry for " + img.file);
    }
  }
  for (const auto& e : m.plan.schedule) {
    if (!seen.contains(e.index())) {
      throw Error(Errc::missing_image,
                  "no image entry for tile " + tile_file_name(e.index()));
    }
  }
}

std::string manifest_to_string(const RunManifest& m) {
  json images = json::array();
  for (const auto& img : m.images) {
    images.push_back({{"j", img.index.j}, {"k", img.index.k}, {"file", img.file}});
  }
  json j = {{"tool_version", m.tool_version},
            {"seed", m.seed},
            {"hole", hole_json(m.hole)},
            {"optics", optics_json(m.optics)},
            {"region", region_json(m.region)},
            {"plan", plan_json(m.plan)},
            {"images", images}};
  if (m.truth) {
    j["truth"] = defects_json(*m.truth);
  }
  if (m.synth) {
    j["synth"] = {{"background", m.synth->background},
                  {"noise_sigma", m.synth->noise_sigma},
                  {"bit_depth", m.synth->bit_depth},
                  {"pitch_um", m.synth->pitch_um}};
  }
  return j.dump(2) + "\n";
}

RunManifest manifest_from_string(const std::string& text) {
  return parse_guard([&] {
    const json j = json::parse(text);
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.hole = hole_from(j.at("hole"));
    m.optics = optics_from(j.at("optics"));
    m.region = region_from(j.at("region"));
    m.plan = plan_from(j.at("plan"));
    for (const auto& img : j.at("images")) {
      m.images.push_back({{img.at("j").get<int>(), img.at("k").get<int>()},
                          img.at("file").get<std::string>()});
    }
    if (j.contains("truth")) {
      m.truth = defects_from(j.at("truth"));
    }
    if (j.contains("synth")) {
      const json& s = j.at("synth");
      m.synth = SynthSettings{s.at("background").get<double>(),
                              s.at("noise_sigma").get<double>(),
                              s.at("bit_depth").get<int>(),
                              s.at("pitch_um").get<double>()};
    }
    return m;
  });
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::io, "cannot write " + path.string());
  }
  out << manifest_to_string(m);
  if (!out) {
    throw Error(Errc::io, "failed writing " + path.string());
  }
}

RunManifest read_manifest(const std::filesystem::path& path, bool check_files) {
  RunManifest m = manifest_from_string(read_text(path));
  validate_manifest(m);
  if (check_files) {
    const auto dir = path.parent_path();
    for (const auto& img : m.images) {
      if (!std::filesystem::exists(dir / img.file)) {
        throw Error(Errc::missing_image, "missing image " + (dir / img.file).string());
      }
    }
  }
  return m;
}

std::vector<DefectSpec> defects_from_string(const std::string& text,
                                            double default_contrast) {
  return parse_guard([&] {
    const json j = json::parse(text);
    json arr = j.is_array() ? j : j.at("defects");
    for (auto& entry : arr) {
      if (entry.is_object() && !entry.contains("contrast")) {
        entry["contrast"] = default_contrast;
      }
    }
    return defects_from(arr);
  });
}

std::string defects_to_string(const std::vector<DefectSpec>& defects) {
  return json{{"defects", defects_json(defects)}}.dump(2) + "\n";
}

}  // namespace borescan
