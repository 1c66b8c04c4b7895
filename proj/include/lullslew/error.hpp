#pragma once

#include <stdexcept>
#include <string>

namespace lullslew {

enum class ErrorKind {
  configuration,
  empty_input,
  data_quality,
  coverage,
  infeasible_scenario,
  domain,
  range,
  io,
};

const char* to_string(ErrorKind kind);

// Base for every error raised by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

#define LULLSLEW_DEFINE_ERROR(Name, Kind)                                     \
  class Name : public Error {                                                 \
  public:                                                                     \
    explicit Name(const std::string& message) : Error(ErrorKind::Kind, message) {} \
  }

LULLSLEW_DEFINE_ERROR(ConfigError, configuration);
LULLSLEW_DEFINE_ERROR(EmptyInputError, empty_input);
LULLSLEW_DEFINE_ERROR(DataQualityError, data_quality);
LULLSLEW_DEFINE_ERROR(CoverageError, coverage);
LULLSLEW_DEFINE_ERROR(InfeasibleScenarioError, infeasible_scenario);
LULLSLEW_DEFINE_ERROR(DomainError, domain);
LULLSLEW_DEFINE_ERROR(RangeError, range);
LULLSLEW_DEFINE_ERROR(IoError, io);

#undef LULLSLEW_DEFINE_ERROR

}  // namespace lullslew
