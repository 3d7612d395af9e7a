#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moyalkit {

enum class ErrorKind {
  InvalidArgument,
  GridMismatch,
  DecayGuard,
  NonConvergence,
  ImaginaryResidue,
  SignedDensity,
  InsufficientSupport,
  DegenerateFit,
};

std::string_view to_string(ErrorKind kind);

/// Shortest round-trip rendering of a double, locale independent.
std::string format_value(double x);

/// Base of every error raised by the numerical core. The kind is stable and
/// is what callers (the CLI in particular) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define MOYALKIT_DEFINE_ERROR(Name)                                            \
  class Name : public Error {                                                  \
   public:                                                                     \
    explicit Name(const std::string& what) : Error(ErrorKind::Name, what) {}  \
  };

MOYALKIT_DEFINE_ERROR(InvalidArgument)
MOYALKIT_DEFINE_ERROR(GridMismatch)
MOYALKIT_DEFINE_ERROR(DecayGuard)
MOYALKIT_DEFINE_ERROR(NonConvergence)
MOYALKIT_DEFINE_ERROR(ImaginaryResidue)
MOYALKIT_DEFINE_ERROR(SignedDensity)
MOYALKIT_DEFINE_ERROR(InsufficientSupport)
MOYALKIT_DEFINE_ERROR(DegenerateFit)

#undef MOYALKIT_DEFINE_ERROR

}  // namespace moyalkit
