#include "ldar/error.hpp"

namespace ldar {

const char* to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::usage:
      return "usage";
    case ErrorCategory::data:
      return "data";
    case ErrorCategory::numerical:
      return "numerical";
    case ErrorCategory::io:
      return "io";
  }
  return "unknown";
}

}  // namespace ldar
