#include "lullslew/error.hpp"

namespace lullslew {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::configuration: return "configuration error";
    case ErrorKind::empty_input: return "empty input";
    case ErrorKind::data_quality: return "data-quality error";
    case ErrorKind::coverage: return "coverage error";
    case ErrorKind::infeasible_scenario: return "infeasible scenario";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::range: return "range error";
    case ErrorKind::io: return "i/o error";
  }
  return "error";
}

}  // namespace lullslew
