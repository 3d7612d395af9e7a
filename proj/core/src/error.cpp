#include "moyalkit/error.hpp"

#include <array>
#include <charconv>

namespace moyalkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::DecayGuard: return "DecayGuard";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ImaginaryResidue: return "ImaginaryResidue";
    case ErrorKind::SignedDensity: return "SignedDensity";
    case ErrorKind::InsufficientSupport: return "InsufficientSupport";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
  }
  return "Unknown";
}

std::string format_value(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general);
  return std::string(buf.data(), res.ptr);
}

}  // namespace moyalkit
