#pragma once

#include <stdexcept>
#include <string>

namespace borescan {

enum class Errc {
  invalid_config,
  degenerate_optics,
  domain,
  out_of_domain,
  out_of_bounds,
  degenerate_plan,
  placement,
  degenerate_threshold,
  not_found,
  frame_mismatch,
  index,
  io,
  parse,
  missing_image,
  no_truth,
};

const char* to_string(Errc code) noexcept;

/// Library-wide exception; the code tells callers (the CLI in particular)
/// which failure class occurred.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace borescan
