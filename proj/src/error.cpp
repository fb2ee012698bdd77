#include "borescan/error.hpp"

namespace borescan {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_config: return "invalid configuration";
    case Errc::degenerate_optics: return "degenerate optics";
    case Errc::domain: return "domain error";
    case Errc::out_of_domain: return "out of domain";
    case Errc::out_of_bounds: return "out of bounds";
    case Errc::degenerate_plan: return "degenerate plan";
    case Errc::placement: return "placement error";
    case Errc::degenerate_threshold: return "degenerate threshold";
    case Errc::not_found: return "not found";
    case Errc::frame_mismatch: return "frame mismatch";
    case Errc::index: return "index error";
    case Errc::io: return "i/o error";
    case Errc::parse: return "parse error";
    case Errc::missing_image: return "missing image";
    case Errc::no_truth: return "no truth";
  }
  return "unknown";
}

}  // namespace borescan
