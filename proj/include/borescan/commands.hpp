#pragma once

// Batch commands behind the `borescan` tool. Each returns a process exit
// code and writes diagnostics to `log`; machine output goes to files.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "borescan/detect.hpp"
#include "borescan/error.hpp"

namespace borescan::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,       // anything not listed below
  kParseError = 2,    // config, manifest, defect list or report syntax
  kInvalidGeometry = 3,
  kUnwritable = 4,
  kMissingImage = 5,  // missing or corrupt tile
  kNoTruth = 6,       // nothing to compare against
};

int exit_code_for(Errc code) noexcept;

struct PlanArgs {
  fs::path config;
  fs::path out;  // manifest path
};

struct SynthArgs {
  fs::path config;
  fs::path defects;  // empty: blank surface
  fs::path out;      // output directory
  std::optional<std::uint64_t> seed;
  std::optional<double> noise_sigma;
  int threads = 0;  // 0: BORESCAN_THREADS or all cores
};

struct InspectArgs {
  fs::path manifest;
  fs::path out;
  std::optional<fs::path> config;  // detection settings only
  std::optional<ThresholdMethod> threshold;
  int threads = 0;
  bool write_corrected = true;
  bool write_panorama = true;
};

struct CompareArgs {
  std::vector<fs::path> reports;
  fs::path manifest;
  std::optional<fs::path> out;  // CSV; stdout when absent
};

int cmd_plan(const PlanArgs& args, std::ostream& out, std::ostream& log);
int cmd_synth(const SynthArgs& args, std::ostream& log);
int cmd_inspect(const InspectArgs& args, std::ostream& log);
int cmd_report_compare(const CompareArgs& args, std::ostream& out, std::ostream& log);

}  // namespace borescan::cli
