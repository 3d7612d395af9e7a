#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "moyalkit/field.hpp"

namespace moyalkit::detail {

enum class FftSign { Plus, Minus };

/// Unnormalised DFT of every line along `axis` of a row-major array:
///   out[k] = sum_j in[j] exp(sign * 2 pi i j k / n).
/// Lines are copied through aligned scratch so the chosen FFTW codelets do
/// not depend on the caller's allocation.
void dft_lines(std::vector<Complex>& data, const std::array<std::size_t, 3>& extents,
               std::size_t rank, std::size_t axis, FftSign sign);

}  // namespace moyalkit::detail
