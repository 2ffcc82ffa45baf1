#pragma once

#include <stdexcept>
#include <string>

namespace gravsim {

/// Broad failure categories; the CLI maps each one to a distinct exit code.
enum class ErrorKind {
  Config,
  Data,
  Convergence,
  Coverage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define GRAVSIM_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  }

GRAVSIM_DEFINE_ERROR(InvalidStateError, Data);
GRAVSIM_DEFINE_ERROR(InvalidParameterError, Data);
GRAVSIM_DEFINE_ERROR(DegenerateDriveError, Data);
GRAVSIM_DEFINE_ERROR(InvalidSequenceError, Data);
GRAVSIM_DEFINE_ERROR(StepSizeError, Data);
GRAVSIM_DEFINE_ERROR(TimeOrderError, Data);
GRAVSIM_DEFINE_ERROR(EliminationSingularityError, Data);
GRAVSIM_DEFINE_ERROR(InsufficientDataError, Data);
GRAVSIM_DEFINE_ERROR(ResolutionError, Data);
GRAVSIM_DEFINE_ERROR(DataError, Data);
GRAVSIM_DEFINE_ERROR(FitError, Convergence);
GRAVSIM_DEFINE_ERROR(AmbiguityError, Convergence);
GRAVSIM_DEFINE_ERROR(CoverageError, Coverage);
GRAVSIM_DEFINE_ERROR(ConfigError, Config);

#undef GRAVSIM_DEFINE_ERROR

}  // namespace gravsim
