#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "moyalkit/field.hpp"

namespace moyalkit {

// Transform convention, per transformed axis x with dual frequency w:
//
//   forward:  f~(w) = step * sum_j exp(+i w x_j) f(x_j)
//   inverse:  f(x)  = (dw / 2pi) * sum_m exp(-i w_m x) f~(w_m)
//
// so f~(0) is the quadrature integral of f. Spectra are stored zero-centred
// (see ConjugateGrid1D); a transformed field keeps its parent Grid1D on every
// axis and callers use conjugate(axis) for the frequencies.

using AxisSet = std::vector<std::size_t>;

AxisSet all_axes(std::size_t rank);

ComplexField forward_transform(const RealField& f, const AxisSet& axes);
ComplexField forward_transform(const ComplexField& f, const AxisSet& axes);
ComplexField inverse_transform(const ComplexField& f, const AxisSet& axes);

/// Spectral coefficients below this fraction of the largest one are treated
/// as roundoff and dropped before high-order differentiation.
inline constexpr double kSpectralNoiseFloor = 1e-14;

/// d^order f / dx_axis^order by multiplication with (-i w)^order. For odd
/// orders the unpaired Nyquist mode is zeroed so real input stays real.
/// Throws InvalidArgument for order < 0 or order > n.
RealField spectral_derivative(const RealField& f, std::size_t axis, int order);

/// Multiplies every line along `axis` by `factors` (one per zero-centred index).
void scale_along(ComplexField& f, std::size_t axis, std::span<const Complex> factors);
void scale_along(ComplexField& f, std::size_t axis, std::span<const double> factors);

/// Real part of f, throwing ImaginaryResidue if the imaginary part exceeds
/// `relative_tolerance` times the largest real magnitude.
RealField real_part_checked(const ComplexField& f, double relative_tolerance,
                            std::string_view what);

/// Real trigonometric interpolant of a 1-axis field evaluated at arbitrary x
/// (periodic with period 2 * half_width).
std::vector<double> spectral_interpolate(const RealField& f, std::span<const double> xs);

/// Samples of the same interpolant at x_j + shift for every grid point x_j.
RealField spectral_translate(const RealField& f, double shift);

}  // namespace moyalkit
