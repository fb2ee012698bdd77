#pragma once

// Flat key-value configuration with [hole], [optics], [region], [detect]
// and [synth] sections. Units are fixed by the key suffix: _mm, _um
// (µm/pixel), _deg; intensities are fractions of full scale.

#include <cstdint>
#include <filesystem>
#include <string>

#include "borescan/geometry.hpp"
#include "borescan/pipeline.hpp"
#include "borescan/scanplan.hpp"

namespace borescan {

struct SynthConfig {
  double background = 0.7;
  double contrast = -0.4;
  double noise_sigma = 0.0;
  int bit_depth = 8;
  std::uint64_t seed = 0;
};

struct RunConfig {
  HoleSpec hole;
  OpticsConfig optics;
  EffectiveRegion region;
  DetectConfig detect;
  SynthConfig synth;
};

/// Throws Error(parse) naming the offending key for syntax errors, missing
/// required keys and unknown keys; Error(invalid_config) for values that
/// parse but describe impossible geometry.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Annotated template with the default values.
std::string default_config_text();

}  // namespace borescan
