#pragma once

#include <stdexcept>
#include <string>

namespace penair {

enum class ErrorKind {
  Parse,              // malformed row in a sample file
  Order,              // decreasing timestamp
  EmptyInput,         // no data rows
  Format,             // manifest header or spec-file syntax
  Duplicate,          // repeated manifest key
  Value,              // empty label, out-of-range option
  InsufficientData,   // operation needs more samples
  EmptyGroup,         // rank test on an empty sample
  EmptyCohort,        // nothing left after anomaly exclusion
  UndefinedPercentage,
  Size,               // exact test beyond its enumeration limit
  Spec,               // synth spec invariant violated
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `line` is 1-based when the error
/// points into an input file, 0 otherwise.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace penair
