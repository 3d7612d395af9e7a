#include "moyalkit/grid.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "moyalkit/error.hpp"

namespace moyalkit {

Grid1D::Grid1D(std::size_t n, double half_width)
    : n_(n), half_width_(half_width), step_(2.0 * half_width / static_cast<double>(n)) {}

std::vector<double> Grid1D::points() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = point(j);
  return out;
}

Grid1D make_grid(std::size_t n, double half_width) {
  if (n < 16 || !std::has_single_bit(n)) {
    throw InvalidArgument("grid size must be a power of two >= 16, got " + std::to_string(n));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidArgument("grid half_width must be positive and finite");
  }
  return Grid1D(n, half_width);
}

std::vector<double> ConjugateGrid1D::frequencies() const {
  std::vector<double> out(n_);
  for (std::size_t m = 0; m < n_; ++m) out[m] = frequency(m);
  return out;
}

}  // namespace moyalkit
