#include "lqw/error.hpp"

namespace lqw {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidGrid: return "invalid-grid";
    case ErrorCode::InvalidCoordinate: return "invalid-coordinate";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::NotApplicable: return "not-applicable";
    case ErrorCode::InvalidWeight: return "invalid-weight";
    case ErrorCode::InvalidMarkedSet: return "invalid-marked-set";
    case ErrorCode::DuplicateVertex: return "duplicate-vertex";
    case ErrorCode::InvalidPlacement: return "invalid-placement";
    case ErrorCode::InvalidCap: return "invalid-cap";
    case ErrorCode::NumericFailure: return "numeric-failure";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace lqw
