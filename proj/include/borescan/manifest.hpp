#pragma once

// Run manifest: everything needed to reproduce or inspect an image stack.
// Stored as JSON.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "borescan/geometry.hpp"
#include "borescan/image.hpp"
#include "borescan/scanplan.hpp"

namespace borescan {

inline constexpr const char* kToolVersion = "borescan 1.0.0";

enum class DefectKind { disc, line };
enum class LineAxis { axial, circumferential };

/// One prefabricated feature on a synthetic surface.
struct DefectSpec {
  DefectKind kind = DefectKind::disc;
  double z_mm = 0.0;     // distance to the nozzle
  double beta_deg = 0.0;
  double size_mm = 0.1;  // disc diameter or line width
  double length_mm = 0.0;
  double contrast = -0.4;  // fraction of full scale, negative = dark
  LineAxis axis = LineAxis::axial;
  std::string group;  // discs sharing a group are spacing benchmarks

  void validate() const;

  friend bool operator==(const DefectSpec&, const DefectSpec&) = default;
};

struct SynthSettings {
  double background = 0.7;
  double noise_sigma = 0.0;
  int bit_depth = 8;
  double pitch_um = 2.16;

  friend bool operator==(const SynthSettings&, const SynthSettings&) = default;
};

struct ImageEntry {
  TileIndex index;
  std::string file;  // relative to the manifest directory

  friend bool operator==(const ImageEntry&, const ImageEntry&) = default;
};

struct RunManifest {
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  HoleSpec hole;
  OpticsConfig optics;
  EffectiveRegion region;
  ScanPlan plan;
  std::vector<ImageEntry> images;
  std::optional<std::vector<DefectSpec>> truth;
  std::optional<SynthSettings> synth;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

std::string tile_file_name(TileIndex index);

/// Checks that every plan position has exactly one image entry.
void validate_manifest(const RunManifest& manifest);

std::string manifest_to_string(const RunManifest& manifest);
RunManifest manifest_from_string(const std::string& text);

void write_manifest(const std::filesystem::path& path,
                    const RunManifest& manifest);

/// Parses and validates; with `check_files`, also requires every image to
/// exist next to the manifest.
RunManifest read_manifest(const std::filesystem::path& path,
                          bool check_files = true);

/// Accepts a bare array or {"defects": [...]}. Entries without a contrast
/// get `default_contrast`.
std::vector<DefectSpec> defects_from_string(
    const std::string& text, double default_contrast = DefectSpec{}.contrast);
std::string defects_to_string(const std::vector<DefectSpec>& defects);

}  // namespace borescan
