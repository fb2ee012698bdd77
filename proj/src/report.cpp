#include "borescan/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "borescan/error.hpp"

namespace borescan {

using nlohmann::json;

namespace {

const char* kind_name(FeatureKind kind) {
  return kind == FeatureKind::disc_like ? "disc" : "line";
}

FeatureKind kind_from(const std::string& name) {
  if (name == "disc") return FeatureKind::disc_like;
  if (name == "line") return FeatureKind::line_like;
  throw Error(Errc::parse, "unknown feature kind '" + name + "'");
}

FeatureKind expected_kind(const DefectSpec& d) {
  return d.kind == DefectKind::disc ? FeatureKind::disc_like : FeatureKind::line_like;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
}

json record_json(const DefectRecord& r) {
  json sources = json::array();
  for (const auto& s : r.sources) {
    sources.push_back({{"j", s.tile.j}, {"k", s.tile.k}, {"m", s.m}, {"n", s.n}});
  }
  return {{"id", r.id},
          {"kind", kind_name(r.kind)},
          {"z_mm", r.z_mm},
          {"z_bottom_mm", r.z_bottom_mm},
          {"beta_deg", r.beta_deg},
          {"size_mm", r.size_mm},
          {"area_mm2", r.physical_area_mm2},
          {"pixel_area", r.pixel_area},
          {"segment_widths_mm", r.segment_widths_mm},
          {"box",
           {{"z_lo_mm", r.box.z_lo_mm},
            {"z_hi_mm", r.box.z_hi_mm},
            {"beta_lo_deg", r.box.beta_lo_deg},
            {"beta_hi_deg", r.box.beta_hi_deg}}},
          {"truncated", r.truncated},
          {"sources", sources}};
}

DefectRecord record_from(const json& j) {
  DefectRecord r;
  r.id = j.at("id").get<int>();
  r.kind = kind_from(j.at("kind").get<std::string>());
  r.z_mm = j.at("z_mm").get<double>();
  r.z_bottom_mm = j.at("z_bottom_mm").get<double>();
  r.beta_deg = j.at("beta_deg").get<double>();
  r.size_mm = j.at("size_mm").get<double>();
  r.physical_area_mm2 = j.at("area_mm2").get<double>();
  r.pixel_area = j.at("pixel_area").get<std::size_t>();
  r.segment_widths_mm = j.at("segment_widths_mm").get<std::vector<double>>();
  const json& b = j.at("box");
  r.box = {b.at("z_lo_mm").get<double>(), b.at("z_hi_mm").get<double>(),
           b.at("beta_lo_deg").get<double>(), b.at("beta_hi_deg").get<double>()};
  r.truncated = j.at("truncated").get<bool>();
  for (const auto& s : j.at("sources")) {
    r.sources.push_back({{s.at("j").get<int>(), s.at("k").get<int>()},
                         s.at("m").get<double>(),
                         s.at("n").get<double>()});
  }
  return r;
}

}  // namespace

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mean = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (values.size() - 1));
}

double surface_distance(double z_a, double beta_a, double z_b, double beta_b,
                        double radius_mm) {
  const double arc = deg_to_rad(angular_distance(beta_a, beta_b)) * radius_mm;
  return std::hypot(z_a - z_b, arc);
}

std::optional<std::size_t> match_truth(const DefectSpec& truth,
                                       std::span<const DefectRecord> records,
                                       double radius_mm) {
  const double limit = truth.kind == DefectKind::disc
                           ? std::max(truth.size_mm, 0.1)
                           : std::max(0.5 * truth.length_mm, truth.size_mm);
  std::optional<std::size_t> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].kind != expected_kind(truth)) continue;
    const double d = surface_distance(truth.z_mm, truth.beta_deg, records[i].z_mm,
                                      records[i].beta_deg, radius_mm);
    if (d <= limit && d < best_distance) {
      best_distance = d;
      best = i;
    }
  }
  return best;
}

DefectReport build_report(std::vector<DefectRecord> records, const HoleSpec& hole,
                          const std::optional<std::vector<DefectSpec>>& truth) {
  DefectReport report;
  report.radius_mm = hole.radius_mm;
  report.records = std::move(records);
  for (const FeatureKind kind : {FeatureKind::disc_like, FeatureKind::line_like}) {
    std::vector<double> sizes;
    for (const auto& r : report.records) {
      if (r.kind == kind) sizes.push_back(r.size_mm);
    }
    if (sizes.empty()) continue;
    report.summary.push_back({kind, static_cast<int>(sizes.size()), mean_of(sizes),
                              sample_stddev(sizes)});
  }
  if (truth) {
    std::vector<TruthMatch> matches;
    for (std::size_t t = 0; t < truth->size(); ++t) {
      const DefectSpec& d = (*truth)[t];
      TruthMatch m;
      m.truth_index = t;
      m.truth_size_mm = d.size_mm;
      if (const auto hit = match_truth(d, report.records, hole.radius_mm)) {
        const DefectRecord& r = report.records[*hit];
        m.record_id = r.id;
        m.measured_size_mm = r.size_mm;
        m.position_error_mm =
            surface_distance(d.z_mm, d.beta_deg, r.z_mm, r.beta_deg, hole.radius_mm);
      }
      matches.push_back(m);
    }
    report.comparison = std::move(matches);
  }
  return report;
}

std::string report_to_csv(const DefectReport& report) {
  std::ostringstream out;
  out << "id,kind,z_mm,beta_deg,z_bottom_mm,size_mm,area_mm2,pixel_area,sources,truncated\n";
  for (const auto& r : report.records) {
    out << r.id << ',' << kind_name(r.kind) << ',' << fixed(r.z_mm, 4) << ','
        << fixed(r.beta_deg, 4) << ',' << fixed(r.z_bottom_mm, 4) << ','
        << fixed(r.size_mm, 3) << ',' << fixed(r.physical_area_mm2, 6) << ','
        << r.pixel_area << ',' << r.sources.size() << ','
        << (r.truncated ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string report_to_json(const DefectReport& report) {
  json records = json::array();
  for (const auto& r : report.records) records.push_back(record_json(r));
  json summary = json::array();
  for (const auto& s : report.summary) {
    summary.push_back({{"kind", kind_name(s.kind)},
                       {"count", s.count},
                       {"mean_size_mm", s.mean_size_mm},
                       {"std_size_mm", s.std_size_mm}});
  }
  json j = {{"tool_version", kToolVersion},
            {"radius_mm", report.radius_mm},
            {"records", records},
            {"summary", summary}};
  if (report.comparison) {
    json cmp = json::array();
    for (const auto& m : *report.comparison) {
      json row = {{"truth_index", m.truth_index}, {"truth_size_mm", m.truth_size_mm}};
      if (m.record_id) {
        row["record_id"] = *m.record_id;
        row["measured_size_mm"] = m.measured_size_mm;
        row["position_error_mm"] = m.position_error_mm;
      } else {
        row["record_id"] = nullptr;
      }
      cmp.push_back(row);
    }
    j["comparison"] = cmp;
  }
  return j.dump(2) + "\n";
}

DefectReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    DefectReport report;
    report.radius_mm = j.at("radius_mm").get<double>();
    for (const auto& r : j.at("records")) report.records.push_back(record_from(r));
    for (const auto& s : j.at("summary")) {
      report.summary.push_back({kind_from(s.at("kind").get<std::string>()),
                                s.at("count").get<int>(),
                                s.at("mean_size_mm").get<double>(),
                                s.at("std_size_mm").get<double>()});
    }
    if (j.contains("comparison")) {
      std::vector<TruthMatch> matches;
      for (const auto& c : j.at("comparison")) {
        TruthMatch m;
        m.truth_index = c.at("truth_index").get<std::size_t>();
        m.truth_size_mm = c.at("truth_size_mm").get<double>();
        if (!c.at("record_id").is_null()) {
          m.record_id = c.at("record_id").get<int>();
          m.measured_size_mm = c.at("measured_size_mm").get<double>();
          m.position_error_mm = c.at("position_error_mm").get<double>();
        }
        matches.push_back(m);
      }
      report.comparison = std::move(matches);
    }
    return report;
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("report: ") + e.what());
  }
}

std::vector<CompareRow> compare_reports(std::span<const DefectReport> reports,
                                        const std::vector<DefectSpec>& truth,
                                        const HoleSpec& hole) {
  if (reports.empty()) {
    throw Error(Errc::no_truth, "no trial reports to compare");
  }
  if (truth.empty()) {
    throw Error(Errc::no_truth, "manifest carries no truth defects");
  }
  const int trials = static_cast<int>(reports.size());
  const double r = hole.radius_mm;

  // Matched record per (trial, truth).
  std::vector<std::vector<std::optional<std::size_t>>> hits(reports.size());
  for (std::size_t t = 0; t < reports.size(); ++t) {
    for (const auto& d : truth) {
      hits[t].push_back(match_truth(d, reports[t].records, r));
    }
  }

  auto finish = [&](CompareRow row, const std::vector<double>& values) {
    row.trials = trials;
    row.found = static_cast<int>(values.size());
    row.mean_mm = mean_of(values);
    row.std_mm = sample_stddev(values);
    return row;
  };

  std::vector<CompareRow> rows;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const DefectSpec& d = truth[i];
    std::vector<double> values;
    for (std::size_t t = 0; t < reports.size(); ++t) {
      if (hits[t][i]) values.push_back(reports[t].records[*hits[t][i]].size_mm);
    }
    const bool disc = d.kind == DefectKind::disc;
    rows.push_back(finish({(disc ? "disc#" : "line#") + std::to_string(i + 1),
                           disc ? "diameter" : "width", d.size_mm},
                          values));
  }

  // Spacing between discs of the same group.
  for (std::size_t a = 0; a < truth.size(); ++a) {
    for (std::size_t b = a + 1; b < truth.size(); ++b) {
      const DefectSpec& da = truth[a];
      const DefectSpec& db = truth[b];
      if (da.group.empty() || da.group != db.group || da.kind != DefectKind::disc ||
          db.kind != DefectKind::disc) {
        continue;
      }
      std::vector<double> values;
      for (std::size_t t = 0; t < reports.size(); ++t) {
        if (!hits[t][a] || !hits[t][b]) continue;
        const DefectRecord& ra = reports[t].records[*hits[t][a]];
        const DefectRecord& rb = reports[t].records[*hits[t][b]];
        values.push_back(surface_distance(ra.z_mm, ra.beta_deg, rb.z_mm, rb.beta_deg, r));
      }
      rows.push_back(finish({"spacing#" + std::to_string(a + 1) + "-" + std::to_string(b + 1),
                             "spacing",
                             surface_distance(da.z_mm, da.beta_deg, db.z_mm, db.beta_deg, r)},
                            values));
    }
  }
  return rows;
}

std::string compare_to_csv(std::span<const CompareRow> rows) {
  std::ostringstream out;
  out << "feature,quantity,truth_mm,trials,found,mean_mm,std_mm\n";
  for (const auto& row : rows) {
    out << row.feature << ',' << row.quantity << ',' << fixed(row.truth_mm, 3) << ','
        << row.trials << ',' << row.found << ',' << fixed(row.mean_mm, 3) << ','
        << fixed(row.std_mm, 3) << '\n';
  }
  return out.str();
}

}  // namespace borescan
