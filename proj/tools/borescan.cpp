// borescan: plan, synthesize, inspect and compare bore-surface scans.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "borescan/commands.hpp"
#include "borescan/config.hpp"
#include "borescan/manifest.hpp"

using namespace borescan;

int main(int argc, char** argv) {
  CLI::App app{"Inner-surface inspection of small blind holes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string config_path;
  std::string out_path;
  int threads = 0;

  auto* plan = app.add_subcommand("plan", "compute the scan plan and write a plan-only manifest");
  plan->add_option("--config", config_path, "configuration file")->required();
  plan->add_option("--out", out_path, "manifest to write");

  std::string defects_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise_sigma;
  auto* synth = app.add_subcommand("synth", "render a synthetic image stack");
  synth->add_option("--config", config_path, "configuration file")->required();
  synth->add_option("--defects", defects_path, "defect list (JSON)");
  synth->add_option("--out", out_path, "output directory")->required();
  synth->add_option("--seed", seed, "noise seed (overrides synth.seed)");
  synth->add_option("--noise-sigma", noise_sigma,
                    "noise standard deviation, fraction of full scale");
  synth->add_option("--threads", threads, "worker threads");

  std::string manifest_path;
  std::optional<std::string> inspect_config;
  std::optional<ThresholdMethod> threshold;
  bool no_corrected = false;
  bool no_panorama = false;
  const std::map<std::string, ThresholdMethod> methods{
      {"fixed", ThresholdMethod::fixed}, {"otsu", ThresholdMethod::otsu}};
  auto* inspect = app.add_subcommand("inspect", "correct, detect, locate and report");
  inspect->add_option("manifest", manifest_path, "run manifest")->required();
  inspect->add_option("--out", out_path, "output directory")->required();
  inspect->add_option("--config", inspect_config, "configuration file ([detect] is used)");
  inspect->add_option("--threshold", threshold, "fixed | otsu")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  inspect->add_option("--threads", threads, "worker threads");
  inspect->add_flag("--no-corrected", no_corrected, "skip writing corrected tiles");
  inspect->add_flag("--no-panorama", no_panorama, "skip the panorama image");

  std::vector<std::string> reports;
  auto* compare = app.add_subcommand("report-compare", "compare trial reports with the truth");
  compare->add_option("reports", reports, "report.json files, one per trial");
  compare->add_option("--manifest", manifest_path, "manifest with truth")->required();
  compare->add_option("--out", out_path, "CSV to write (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kParseError;
  }

  if (*plan) {
    return cli::cmd_plan({config_path, out_path}, std::cout, std::cerr);
  }
  if (*synth) {
    return cli::cmd_synth({config_path, defects_path, out_path, seed, noise_sigma, threads},
                          std::cerr);
  }
  if (*inspect) {
    cli::InspectArgs args;
    args.manifest = manifest_path;
    args.out = out_path;
    if (inspect_config) args.config = *inspect_config;
    args.threshold = threshold;
    args.threads = threads;
    args.write_corrected = !no_corrected;
    args.write_panorama = !no_panorama;
    return cli::cmd_inspect(args, std::cerr);
  }
  cli::CompareArgs args;
  for (const auto& r : reports) args.reports.emplace_back(r);
  args.manifest = manifest_path;
  if (!out_path.empty()) args.out = out_path;
  return cli::cmd_report_compare(args, std::cout, std::cerr);
}
