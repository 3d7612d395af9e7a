#include "moyalkit/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"

namespace moyalkit {
namespace {

std::array<std::size_t, 3> extents_of(const ComplexField& f) {
  std::array<std::size_t, 3> ext{1, 1, 1};
  for (std::size_t a = 0; a < f.rank(); ++a) ext[a] = f.extent(a);
  return ext;
}

void check_axes(std::size_t rank, const AxisSet& axes) {
  for (std::size_t a : axes) {
    if (a >= rank) throw InvalidArgument("transform axis " + std::to_string(a) + " out of range");
  }
}

// (-1)^(m - n/2) for a zero-centred index m.
double centre_sign(std::size_t m, std::size_t n) {
  return ((m + n / 2) % 2 == 0) ? 1.0 : -1.0;
}

// Forward transform of one axis, in place, natural -> zero-centred ordering.
void forward_axis(ComplexField& f, std::size_t axis) {
  const std::size_t n = f.extent(axis);
  const double h = f.axis(axis).step();
  detail::dft_lines(f.values(), extents_of(f), f.rank(), axis, detail::FftSign::Plus);

  const std::size_t stride = f.stride(axis);
  const std::size_t outer = f.size() / (n * stride);
  std::vector<Complex> line(n);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < stride; ++s) {
      const std::size_t base = o * n * stride + s;
      for (std::size_t m = 0; m < n; ++m) {
        const std::size_t k = (m + n / 2) % n;
        line[m] = h * centre_sign(m, n) * f[base + k * stride];
      }
      for (std::size_t m = 0; m < n; ++m) f[base + m * stride] = line[m];
    }
  }
}

void inverse_axis(ComplexField& f, std::size_t axis) {
  const std::size_t n = f.extent(axis);
  const double scale = 1.0 / (static_cast<double>(n) * f.axis(axis).step());
  const std::size_t stride = f.stride(axis);
  const std::size_t outer = f.size() / (n * stride);
  std::vector<Complex> line(n);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < stride; ++s) {
      const std::size_t base = o * n * stride + s;
      for (std::size_t m = 0; m < n; ++m) {
        const std::size_t k = (m + n / 2) % n;
        line[k] = centre_sign(m, n) * f[base + m * stride];
      }
      for (std::size_t k = 0; k < n; ++k) f[base + k * stride] = line[k];
    }
  }
  detail::dft_lines(f.values(), extents_of(f), f.rank(), axis, detail::FftSign::Minus);
  for (auto& v : f.values()) v *= scale;
}

ComplexField to_complex(const RealField& f) {
  ComplexField c(f.axes());
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i];
  return c;
}

}  // namespace

AxisSet all_axes(std::size_t rank) {
  AxisSet out(rank);
  for (std::size_t a = 0; a < rank; ++a) out[a] = a;
  return out;
}

ComplexField forward_transform(const ComplexField& f, const AxisSet& axes) {
  check_axes(f.rank(), axes);
  ComplexField out = f;
  for (std::size_t a : axes) forward_axis(out, a);
  return out;
}

ComplexField forward_transform(const RealField& f, const AxisSet& axes) {
  return forward_transform(to_complex(f), axes);
}

ComplexField inverse_transform(const ComplexField& f, const AxisSet& axes) {
  check_axes(f.rank(), axes);
  ComplexField out = f;
  for (std::size_t a : axes) inverse_axis(out, a);
  return out;
}

RealField spectral_derivative(const RealField& f, std::size_t axis, int order) {
  if (axis >= f.rank()) throw InvalidArgument("derivative axis out of range");
  const std::size_t n = f.extent(axis);
  if (order < 0 || static_cast<std::size_t>(order) > n) {
    throw InvalidArgument("derivative order " + std::to_string(order) +
                          " outside [0, " + std::to_string(n) + "]");
  }
  if (order == 0) return f;

  ComplexField spec = forward_transform(f, {axis});
  const double floor = kSpectralNoiseFloor * max_abs(spec);
  for (auto& v : spec.values()) {
    if (std::abs(v) < floor) v = 0.0;
  }

  const ConjugateGrid1D dual = conjugate(f.axis(axis));
  // (-i)^order cycles through 1, -i, -1, i.
  static constexpr std::array<Complex, 4> kPhase{Complex(1, 0), Complex(0, -1), Complex(-1, 0),
                                                 Complex(0, 1)};
  std::vector<Complex> symbol(n);
  for (std::size_t m = 0; m < n; ++m) {
    symbol[m] = std::pow(dual.frequency(m), order) * kPhase[order % 4];
  }
  if (order % 2 == 1) symbol[0] = 0.0;
  scale_along(spec, axis, symbol);
  ComplexField back = inverse_transform(spec, {axis});

  RealField out(f.axes());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = back[i].real();
  return out;
}

void scale_along(ComplexField& f, std::size_t axis, std::span<const Complex> factors) {
  const std::size_t n = f.extent(axis);
  if (factors.size() != n) throw InvalidArgument("scale_along: factor count mismatch");
  const std::size_t stride = f.stride(axis);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= factors[(i / stride) % n];
}

void scale_along(ComplexField& f, std::size_t axis, std::span<const double> factors) {
  const std::size_t n = f.extent(axis);
  if (factors.size() != n) throw InvalidArgument("scale_along: factor count mismatch");
  const std::size_t stride = f.stride(axis);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= factors[(i / stride) % n];
}

RealField real_part_checked(const ComplexField& f, double relative_tolerance,
                            std::string_view what) {
  RealField out(f.axes());
  double re_max = 0.0;
  double im_max = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = f[i].real();
    re_max = std::max(re_max, std::abs(f[i].real()));
    im_max = std::max(im_max, std::abs(f[i].imag()));
  }
  if (im_max > relative_tolerance * re_max) {
    throw ImaginaryResidue(std::string(what) + ": imaginary residue " + format_value(im_max) +
                           " vs real max " + format_value(re_max));
  }
  return out;
}

std::vector<double> spectral_interpolate(const RealField& f, std::span<const double> xs) {
  if (f.rank() != 1) throw InvalidArgument("spectral_interpolate expects a 1-axis field");
  const ComplexField spec = forward_transform(f, {0});
  const ConjugateGrid1D dual = conjugate(f.axis(0));
  const std::size_t n = f.extent(0);
  const double scale = dual.spacing() / (2.0 * std::numbers::pi);

  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    // Nyquist term split evenly between +/- w_N gives the real interpolant.
    double acc = spec[0].real() * std::cos(dual.frequency(0) * x);
    for (std::size_t m = 1; m < n; ++m) {
      const double w = dual.frequency(m);
      acc += spec[m].real() * std::cos(w * x) + spec[m].imag() * std::sin(w * x);
    }
    out[i] = scale * acc;
  }
  return out;
}

RealField spectral_translate(const RealField& f, double shift) {
  if (f.rank() != 1) throw InvalidArgument("spectral_translate expects a 1-axis field");
  ComplexField spec = forward_transform(f, {0});
  const ConjugateGrid1D dual = conjugate(f.axis(0));
  spec[0] *= std::cos(dual.frequency(0) * shift);
  for (std::size_t m = 1; m < spec.size(); ++m) {
    spec[m] *= std::polar(1.0, -dual.frequency(m) * shift);
  }
  const ComplexField back = inverse_transform(spec, {0});
  RealField out(f.axes());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = back[j].real();
  return out;
}

}  // namespace moyalkit
