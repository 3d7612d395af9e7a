#pragma once

#include <cstddef>
#include <vector>

namespace moyalkit {

/// Uniform periodic grid on [-half_width, half_width) with n samples.
///
/// n must be a power of two and at least 16. Coordinates are computed as
/// -half_width + j * step with step = 2 * half_width / n, so the grid is
/// symmetric under x -> -x modulo the period.
class Grid1D {
 public:
  std::size_t size() const noexcept { return n_; }
  double half_width() const noexcept { return half_width_; }
  double step() const noexcept { return step_; }
  double point(std::size_t j) const noexcept {
    return -half_width_ + static_cast<double>(j) * step_;
  }
  std::vector<double> points() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  friend Grid1D make_grid(std::size_t n, double half_width);
  Grid1D(std::size_t n, double half_width);

  std::size_t n_;
  double half_width_;
  double step_;
};

/// Throws InvalidArgument unless n is a power of two >= 16 and half_width > 0.
Grid1D make_grid(std::size_t n, double half_width);

/// Angular-frequency dual of a Grid1D, stored zero-centred: index m holds
/// frequency (m - n/2) * pi / half_width. Index 0 is the Nyquist frequency.
class ConjugateGrid1D {
 public:
  explicit ConjugateGrid1D(const Grid1D& parent)
      : n_(parent.size()), spacing_(3.14159265358979323846 / parent.half_width()) {}

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return spacing_; }
  double frequency(std::size_t m) const noexcept {
    return (static_cast<double>(m) - static_cast<double>(n_ / 2)) * spacing_;
  }
  std::size_t zero_index() const noexcept { return n_ / 2; }
  /// Index of -frequency(m); the Nyquist index maps to itself.
  std::size_t mirror(std::size_t m) const noexcept { return m == 0 ? 0 : n_ - m; }
  std::vector<double> frequencies() const;

  friend bool operator==(const ConjugateGrid1D&, const ConjugateGrid1D&) = default;

 private:
  std::size_t n_;
  double spacing_;
};

inline ConjugateGrid1D conjugate(const Grid1D& g) { return ConjugateGrid1D(g); }

}  // namespace moyalkit
