// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Criteria 8-10 drive the synthetic end-to-end pipeline.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "borescan/commands.hpp"
#include "borescan/config.hpp"
#include "borescan/detect.hpp"
#include "borescan/geometry.hpp"
#include "borescan/parallel.hpp"
#include "borescan/pipeline.hpp"
#include "borescan/report.hpp"
#include "borescan/scanplan.hpp"
#include "borescan/synth.hpp"
#include "borescan/unwrap.hpp"
#include "fixtures.hpp"
#include "flood_fill.hpp"

using namespace borescan;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s,
               const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0.0 && secs > limit_s) {
    out.pass = false;
    out.detail += " [over time limit]";
  }
  if (!out.pass) ++failures;
  std::printf("%s criterion %2d: %s | %s | %.2f s\n", out.pass ? "PASS" : "FAIL", id,
              title.c_str(), out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

DefectSpec disc(double z, double beta, double d, std::string group = {}) {
  DefectSpec s;
  s.z_mm = z;
  s.beta_deg = beta;
  s.size_mm = d;
  s.group = std::move(group);
  return s;
}

DefectSpec line(double z, double beta, double width, double length,
                LineAxis axis = LineAxis::axial) {
  DefectSpec s;
  s.kind = DefectKind::line;
  s.z_mm = z;
  s.beta_deg = beta;
  s.size_mm = width;
  s.length_mm = length;
  s.axis = axis;
  return s;
}

InspectionResult run_synthetic(const HoleSpec& hole, const std::vector<DefectSpec>& defects,
                               double sigma, std::uint64_t seed) {
  const OpticsConfig cfg;
  const EffectiveRegion region;
  const ScanPlan plan = plan_scan(hole, region);
  const SurfaceTexture tex = build_texture(hole, defects, 0.7, cfg.p_x_um);
  SynthOptions opt;
  opt.noise_sigma = sigma;
  opt.seed = seed;
  opt.threads = default_thread_count();
  const SyntheticStack stack = render_stack(tex, plan, cfg, region, opt);
  const InspectContext ctx{hole, cfg, region, plan, DetectConfig{}};
  return inspect_stack(stack.tiles, ctx, opt.threads, false);
}

// ---------------------------------------------------------------------------

Outcome analytic_arc() {
  const double ds = arc_expansion(2.0, 2.53);
  const double ratio = projection_error_ratio(2.0, 2.53);
  return {std::abs(ds - 2.74) <= 0.005 && std::abs(ratio * 100 - 8.30) <= 0.05,
          fmt("d_s = %.4f mm (2.74 +/- 0.005), ratio = %.3f%% (8.30 +/- 0.05 pp)", ds,
              ratio * 100)};
}

Outcome analytic_deviation() {
  const double p = deviation_total(DeviationSpec::from_degrees(45.0, 0.5, 0.2));
  return {p >= 0.4400 && p <= 0.4410, fmt("p_total = %.5f mm in [0.4400, 0.4410]", p)};
}

Outcome analytic_fov() {
  const double e = relative_fov_error(2.53, 2.5, 2.0, 0.44);
  return {std::abs(e * 100 - 0.26) <= 0.01, fmt("eps_m = %.4f%% (0.26 +/- 0.01 pp)", e * 100)};
}

Outcome analytic_extent() {
  const double dm = object_extent(OpticsConfig{}, 2.0);
  return {std::abs(dm - 2.53) <= 0.01, fmt("d_m = %.4f mm (2.53 +/- 0.01)", dm)};
}

Outcome unwrap_round_trip() {
  const int out_w = 695;
  const int rows = 32;
  const int margin = forward_margin(out_w, 2.0, 2.16);
  const int lo = static_cast<int>(std::floor(out_w * 0.05));
  const int hi = out_w - lo;
  double worst_mean = 0.0;
  int worst_max = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TileImage window = fixtures::band_limited_texture(out_w + 2 * margin, rows, 2.16, seed);
    const TileImage back = correct_tile(forward_project(window, 2.0, out_w), 2.0);
    double sum = 0.0;
    int n = 0;
    for (int y = 0; y < rows; ++y) {
      for (int x = lo; x < hi; ++x) {
        const int d = std::abs(int(back.at(x, y)) - int(window.at(x + margin, y)));
        sum += d;
        worst_max = std::max(worst_max, d);
        ++n;
      }
    }
    worst_mean = std::max(worst_mean, sum / n);
  }
  return {worst_mean <= 2.0 && worst_max <= 10,
          fmt("20 textures, worst mean |err| = %.3f/255 (<= 2), worst max = %d/255 (<= 10)",
              worst_mean, worst_max)};
}

Outcome labeling_oracle() {
  int mismatches = 0;
  for (int bits = 0; bits < 65536; ++bits) {
    BinaryMask mask(4, 4);
    for (int i = 0; i < 16; ++i) mask.set(i % 4, i / 4, (bits >> i) & 1);
    const Labeling lab = connected_components(mask, 1);
    const auto ref = oracle::flood_fill(mask, 1);
    if (!oracle::same_partition(lab.labels, ref.labels) || lab.blobs.size() != ref.areas.size()) {
      ++mismatches;
    }
  }
  std::mt19937_64 rng(64);
  int random_mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const BinaryMask mask = fixtures::random_mask(64, 64, 0.2 + 0.3 * (t % 10) / 9.0, rng);
    const Labeling lab = connected_components(mask, 1);
    const auto ref = oracle::flood_fill(mask, 1);
    if (!oracle::same_partition(lab.labels, ref.labels)) ++random_mismatches;
  }
  return {mismatches == 0 && random_mismatches == 0,
          fmt("65536 4x4 masks: %d mismatches; 200 random 64x64: %d mismatches", mismatches,
              random_mismatches)};
}

Outcome coverage() {
  const HoleSpec hole{2.0, 47.0};
  const EffectiveRegion region;
  const ScanPlan full = plan_scan(hole, region);
  const CoverageReport a = coverage_check(full, hole, region);
  const CoverageReport b = coverage_check(plan_scan(hole, region, ShotCounts{8, 32}), hole, region);
  return {full.n_rot == 9 && full.n_depth == 32 && a.covered_fraction == 1.0 &&
              b.covered_fraction < 1.0,
          fmt("9x32 plan: %.4f%% covered; n_rot=8: %.4f%%", a.covered_fraction * 100,
              b.covered_fraction * 100)};
}

Outcome statistical() {
  // Type I/II discs, a Type III pair and a Type IV line on a short bore.
  const HoleSpec hole{2.0, 3.0};
  const std::vector<DefectSpec> base{
      disc(1.6, 25.0, 0.100),          disc(1.3, 95.0, 0.200),
      disc(1.3, 170.0, 0.100, "pair"), disc(1.7, 170.0, 0.100, "pair"),
      line(1.5, 250.0, 0.300, 2.0),
  };
  const int trials = 30;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::vector<DefectReport> reports;
  std::vector<std::vector<DefectSpec>> truths;
  for (int t = 0; t < trials; ++t) {
    // Shift the whole layout by a random fraction of a pixel.
    const double dz = jitter(rng) * 2.16e-3;
    const double du = jitter(rng) * 2.16e-3;
    std::vector<DefectSpec> defects = base;
    for (auto& d : defects) {
      d.z_mm += dz;
      d.beta_deg += rad_to_deg(du / hole.radius_mm);
    }
    const InspectionResult res = run_synthetic(hole, defects, 5.0 / 255.0, 1000 + t);
    reports.push_back(build_report(res.defects, hole, defects));
    truths.push_back(defects);
  }
  // Positions differ per trial by < 1 px; match each trial against its own
  // truth, then pool the per-feature statistics.
  std::vector<std::vector<double>> values;
  std::vector<CompareRow> rows;
  for (int t = 0; t < trials; ++t) {
    const auto one = compare_reports(std::span(&reports[t], 1), truths[t], hole);
    if (rows.empty()) {
      rows = one;
      values.resize(rows.size());
    }
    for (std::size_t i = 0; i < one.size(); ++i) {
      if (one[i].found) values[i].push_back(one[i].mean_mm);
    }
  }
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& v = values[i];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean = v.empty() ? 0.0 : mean / v.size();
    const double sd = sample_stddev(v);
    const bool ok = int(v.size()) == trials && std::abs(mean - rows[i].truth_mm) <= 0.012 &&
                    sd <= 0.010;
    pass = pass && ok;
    detail += fmt("%s%s %s truth %.3f mean %.4f std %.4f (%zu/%d)", i ? "; " : "",
                  rows[i].feature.c_str(), rows[i].quantity.c_str(), rows[i].truth_mm, mean, sd,
                  v.size(), trials);
  }
  return {pass, detail};
}

Outcome localization() {
  // Features straddling rotation seams, depth seams and the 0/360 wrap.
  const HoleSpec hole{2.0, 6.0};
  const std::vector<DefectSpec> truth{
      disc(6.0 - 0.75, 20.0, 0.100),    // both seams at once
      disc(3.0, 359.95, 0.200),         // wraps through beta = 0
      disc(6.0 - 2.25, 140.0, 0.150),   // rotation seam, depth seam
      disc(2.2, 60.0, 0.100, "pair"),   disc(2.6, 60.0, 0.100, "pair"),
      disc(1.1, 300.0, 0.300),
      line(3.0, 200.0, 0.300, 2.5),     // crosses two depth seams
      line(4.5, 260.0, 0.300, 1.2, LineAxis::circumferential),  // crosses a rotation seam
  };
  const InspectionResult res = run_synthetic(hole, truth, 0.0, 1);
  bool pass = res.defects.size() == truth.size();
  double worst_z = 0.0;
  double worst_arc = 0.0;
  int matched = 0;
  std::vector<int> claimed(res.defects.size(), 0);
  for (const auto& d : truth) {
    const auto hit = match_truth(d, res.defects, hole.radius_mm);
    if (!hit) {
      pass = false;
      continue;
    }
    ++matched;
    ++claimed[*hit];
    const DefectRecord& r = res.defects[*hit];
    worst_z = std::max(worst_z, std::abs(r.z_mm - d.z_mm));
    worst_arc = std::max(worst_arc,
                         deg_to_rad(angular_distance(r.beta_deg, d.beta_deg)) * hole.radius_mm);
  }
  for (int c : claimed) pass = pass && c <= 1;
  pass = pass && worst_z <= 0.02 && worst_arc <= 0.02;
  return {pass, fmt("%zu truth, %zu reported, %d matched; max |dz| = %.4f mm, max arc err = "
                    "%.4f mm (<= 0.02)",
                    truth.size(), res.defects.size(), matched, worst_z, worst_arc)};
}

Outcome throughput() {
  const fs::path dir = fixtures::scratch_dir("acceptance_throughput");
  {
    std::ofstream(dir / "run.ini") << default_config_text();
    std::ofstream(dir / "defects.json") << R"({"defects":[
      {"kind":"disc","z_mm":10.0,"beta_deg":30,"size_mm":0.1},
      {"kind":"disc","z_mm":20.0,"beta_deg":130,"size_mm":0.2},
      {"kind":"disc","z_mm":30.0,"beta_deg":230,"size_mm":0.1,"group":"p"},
      {"kind":"disc","z_mm":30.4,"beta_deg":230,"size_mm":0.1,"group":"p"},
      {"kind":"line","z_mm":40.0,"beta_deg":330,"size_mm":0.3,"length_mm":3.0}]})";
  }
  std::ostringstream log;
  const auto t0 = Clock::now();
  const int synth_rc = cli::cmd_synth(
      {dir / "run.ini", dir / "defects.json", dir / "stack", 3, 5.0 / 255.0, 0}, log);
  const auto t1 = Clock::now();
  cli::InspectArgs args;
  args.manifest = dir / "stack" / "manifest.json";
  args.out = dir / "out";
  const int inspect_rc = cli::cmd_inspect(args, log);
  const auto t2 = Clock::now();
  const double synth_s = std::chrono::duration<double>(t1 - t0).count();
  const double inspect_s = std::chrono::duration<double>(t2 - t1).count();

  std::size_t tiles = 0;
  for (const auto& e : fs::directory_iterator(dir / "out" / "corrected")) tiles += e.is_regular_file();
  std::size_t found = 0;
  if (inspect_rc == 0) {
    std::ifstream in(dir / "out" / "report.json");
    std::stringstream ss;
    ss << in.rdbuf();
    found = report_from_json(ss.str()).records.size();
  }
  fs::remove_all(dir);
  return {synth_rc == 0 && inspect_rc == 0 && tiles == 288 && inspect_s < 600.0,
          fmt("288 tiles 835x835 px on %d thread(s): inspect %.1f s (< 600), synth %.1f s, %zu "
              "defects reported",
              default_thread_count(), inspect_s, synth_s, found)};
}

}  // namespace

int main() {
  criterion(1, "arc expansion and projection error", 1.0, analytic_arc);
  criterion(2, "probe deviation", 1.0, analytic_deviation);
  criterion(3, "relative field-of-view error", 1.0, analytic_fov);
  criterion(4, "object extent, 4 mm hole", 1.0, analytic_extent);
  criterion(5, "unwrap round trip", 10.0, unwrap_round_trip);
  criterion(6, "labeling vs flood fill", 30.0, labeling_oracle);
  criterion(7, "scan coverage", 5.0, coverage);
  criterion(8, "statistical sizes, 30 noisy trials", 300.0, statistical);
  criterion(9, "localization and dedup", 120.0, localization);
  criterion(10, "288-tile throughput", 600.0, throughput);
  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
