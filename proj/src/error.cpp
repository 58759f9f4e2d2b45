#include "penair/error.hpp"

namespace penair {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Order: return "order error";
    case ErrorKind::EmptyInput: return "empty input";
    case ErrorKind::Format: return "format error";
    case ErrorKind::Duplicate: return "duplicate error";
    case ErrorKind::Value: return "value error";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::EmptyGroup: return "empty group";
    case ErrorKind::EmptyCohort: return "empty cohort";
    case ErrorKind::UndefinedPercentage: return "undefined percentage";
    case ErrorKind::Size: return "size error";
    case ErrorKind::Spec: return "spec error";
    case ErrorKind::Io: return "I/O error";
  }
  return "error";
}

}  // namespace penair
