#include "borescan/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "borescan/config.hpp"
#include "borescan/locate.hpp"
#include "borescan/manifest.hpp"
#include "borescan/parallel.hpp"
#include "borescan/pgm.hpp"
#include "borescan/pipeline.hpp"
#include "borescan/report.hpp"
#include "borescan/synth.hpp"

namespace borescan::cli {

namespace {

std::string read_text(const fs::path& path, Errc missing) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(missing, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(Errc::io, "cannot create directory " + dir.string());
  }
}

int resolve_threads(int requested) {
  return requested > 0 ? requested : default_thread_count();
}

// Runs `body`, mapping library errors to exit codes.
template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    log << "borescan: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    log << "borescan: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::parse:
      return kParseError;
    case Errc::invalid_config:
    case Errc::degenerate_optics:
    case Errc::degenerate_plan:
    case Errc::domain:
    case Errc::placement:
      return kInvalidGeometry;
    case Errc::io:
      return kUnwritable;
    case Errc::missing_image:
      return kMissingImage;
    case Errc::no_truth:
      return kNoTruth;
    default:
      return kFailure;
  }
}

int cmd_plan(const PlanArgs& args, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig cfg = load_config(args.config);
    RunManifest m;
    m.hole = cfg.hole;
    m.optics = cfg.optics;
    m.region = cfg.region;
    m.plan = plan_scan(cfg.hole, cfg.region);
    m.seed = cfg.synth.seed;
    if (!args.out.empty()) {
      if (args.out.has_parent_path()) make_dir(args.out.parent_path());
      write_manifest(args.out, m);
    }
    out << "n_rot " << m.plan.n_rot << '\n'
        << "n_depth " << m.plan.n_depth << '\n'
        << "alpha_deg " << m.plan.alpha_deg << '\n'
        << "step_mm " << m.plan.step_mm << '\n'
        << "images " << m.plan.schedule.size() << '\n';
    return kOk;
  });
}

int cmd_synth(const SynthArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig cfg = load_config(args.config);
    std::vector<DefectSpec> defects;
    if (!args.defects.empty()) {
      defects = defects_from_string(read_text(args.defects, Errc::parse),
                                    cfg.synth.contrast);
    }
    const ScanPlan plan = plan_scan(cfg.hole, cfg.region);
    const SurfaceTexture texture =
        build_texture(cfg.hole, defects, cfg.synth.background, cfg.optics.p_x_um);
    for (const auto& w : texture.warnings()) log << "borescan: warning: " << w << '\n';

    make_dir(args.out);
    SynthOptions opt;
    opt.seed = args.seed.value_or(cfg.synth.seed);
    opt.noise_sigma = args.noise_sigma.value_or(cfg.synth.noise_sigma);
    opt.bit_depth = cfg.synth.bit_depth;
    opt.threads = resolve_threads(args.threads);
    log << "borescan: rendering " << plan.schedule.size() << " tiles\n";
    const SyntheticStack stack = render_stack(texture, plan, cfg.optics, cfg.region, opt);

    for (std::size_t i = 0; i < stack.tiles.size(); ++i) {
      write_pgm(args.out / stack.manifest.images[i].file, stack.tiles[i]);
    }
    write_manifest(args.out / "manifest.json", stack.manifest);
    log << "borescan: wrote " << (args.out / "manifest.json").string() << '\n';
    return kOk;
  });
}

int cmd_inspect(const InspectArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    const RunManifest m = read_manifest(args.manifest, true);
    DetectConfig detect;
    if (args.config) detect = load_config(*args.config).detect;
    if (args.threshold) detect.threshold.method = *args.threshold;

    const fs::path dir = args.manifest.parent_path();
    std::vector<TileImage> tiles;
    tiles.reserve(m.images.size());
    for (const auto& entry : m.images) {
      tiles.push_back(read_pgm(dir / entry.file, m.optics.p_x_um, m.optics.p_y_um,
                               entry.index));
    }
    make_dir(args.out);

    const InspectContext ctx{m.hole, m.optics, m.region, m.plan, detect};
    log << "borescan: inspecting " << tiles.size() << " tiles\n";
    const bool keep = args.write_corrected || args.write_panorama;
    const InspectionResult result =
        inspect_stack(tiles, ctx, resolve_threads(args.threads), keep);

    if (args.write_corrected) {
      make_dir(args.out / "corrected");
      for (const auto& tile : result.corrected) {
        write_pgm(args.out / "corrected" / tile_file_name(tile.index()), tile);
      }
    }
    if (args.write_panorama) {
      const Panorama pano =
          stitch_panorama(result.corrected, m.plan, m.hole, m.optics, m.region);
      write_pgm(args.out / "panorama.pgm", pano.image);
    }
    const DefectReport report = build_report(result.defects, m.hole, m.truth);
    write_text(args.out / "report.json", report_to_json(report));
    write_text(args.out / "report.csv", report_to_csv(report));
    log << "borescan: " << report.records.size() << " defects\n";
    return kOk;
  });
}

int cmd_report_compare(const CompareArgs& args, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    // Only the truth and the hole are needed; plan-only manifests are fine.
    const RunManifest m = manifest_from_string(read_text(args.manifest, Errc::parse));
    if (!m.truth || m.truth->empty()) {
      throw Error(Errc::no_truth, "manifest carries no truth defects");
    }
    if (args.reports.empty()) {
      throw Error(Errc::no_truth, "no trial reports given");
    }
    std::vector<DefectReport> reports;
    for (const auto& path : args.reports) {
      reports.push_back(report_from_json(read_text(path, Errc::parse)));
    }
    const auto rows = compare_reports(reports, *m.truth, m.hole);
    const std::string csv = compare_to_csv(rows);
    if (args.out) {
      write_text(*args.out, csv);
    } else {
      out << csv;
    }
    return kOk;
  });
}

}  // namespace borescan::cli
