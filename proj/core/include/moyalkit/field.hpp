#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moyalkit/error.hpp"
#include "moyalkit/grid.hpp"

namespace moyalkit {

using Complex = std::complex<double>;

/// Boundary magnitude allowed for "decaying" fields, relative to the maximum.
inline constexpr double kDecayGuard = 1e-10;

/// Dense sample array over 1 to 3 grids, row-major in axis order.
template <typename T>
class Field {
 public:
  using value_type = T;

  Field() = default;

  explicit Field(std::vector<Grid1D> axes) : axes_(std::move(axes)) {
    check_rank();
    values_.assign(count(), T{});
  }

  Field(std::vector<Grid1D> axes, std::vector<T> values)
      : axes_(std::move(axes)), values_(std::move(values)) {
    check_rank();
    if (values_.size() != count()) {
      throw InvalidArgument("field value count " + std::to_string(values_.size()) +
                            " does not match axis product " + std::to_string(count()));
    }
  }

  std::size_t rank() const noexcept { return axes_.size(); }
  const std::vector<Grid1D>& axes() const noexcept { return axes_; }
  const Grid1D& axis(std::size_t a) const { return axes_.at(a); }
  std::size_t extent(std::size_t a) const { return axes_.at(a).size(); }

  /// Distance in the flat array between neighbours along axis a.
  std::size_t stride(std::size_t a) const {
    std::size_t s = 1;
    for (std::size_t b = a + 1; b < axes_.size(); ++b) s *= axes_[b].size();
    return s;
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::vector<T>& values() noexcept { return values_; }
  const std::vector<T>& values() const noexcept { return values_; }

  T& operator[](std::size_t flat) { return values_[flat]; }
  const T& operator[](std::size_t flat) const { return values_[flat]; }

  T& operator()(std::size_t i) { return values_[i]; }
  const T& operator()(std::size_t i) const { return values_[i]; }
  T& operator()(std::size_t i, std::size_t j) { return values_[i * extent(1) + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return values_[i * extent(1) + j]; }
  T& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return values_[(i * extent(1) + j) * extent(2) + k];
  }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[(i * extent(1) + j) * extent(2) + k];
  }

  /// Product of the axis steps: the quadrature weight of one cell.
  double cell_volume() const {
    double v = 1.0;
    for (const auto& g : axes_) v *= g.step();
    return v;
  }

  bool same_shape(const Field& other) const { return axes_ == other.axes_; }

  Field& operator+=(const Field& o) {
    require_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    require_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  Field& operator*=(T s) {
    for (auto& v : values_) v *= s;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, T s) { return a *= s; }
  friend Field operator*(T s, Field a) { return a *= s; }

 private:
  std::size_t count() const {
    std::size_t c = 1;
    for (const auto& g : axes_) c *= g.size();
    return c;
  }
  void check_rank() const {
    if (axes_.empty() || axes_.size() > 3) {
      throw InvalidArgument("fields carry 1, 2 or 3 axes");
    }
  }
  void require_same(const Field& o) const {
    if (!same_shape(o)) throw GridMismatch("field arithmetic on different grids");
  }

  std::vector<Grid1D> axes_;
  std::vector<T> values_;
};

using RealField = Field<double>;
using ComplexField = Field<Complex>;

template <typename T>
double max_abs(const Field<T>& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, static_cast<double>(std::abs(v)));
  return m;
}

/// max |a - b| over matching grids.
template <typename T>
double linf_distance(const Field<T>& a, const Field<T>& b) {
  if (!a.same_shape(b)) throw GridMismatch("linf_distance on different grids");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, static_cast<double>(std::abs(a[i] - b[i])));
  }
  return m;
}

/// Riemann-sum integral over all axes.
template <typename T>
T integrate(const Field<T>& f) {
  T s{};
  for (const auto& v : f.values()) s += v;
  return s * f.cell_volume();
}

/// Largest magnitude found on the first or last slice of any axis, relative
/// to the global maximum. Zero for an identically zero field.
template <typename T>
double boundary_ratio(const Field<T>& f) {
  const double global = max_abs(f);
  if (global == 0.0) return 0.0;
  double edge = 0.0;
  const std::size_t rank = f.rank();
  std::array<std::size_t, 3> ext{1, 1, 1};
  for (std::size_t a = 0; a < rank; ++a) ext[a] = f.extent(a);
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t rem = i;
    bool on_face = false;
    for (std::size_t a = rank; a-- > 0;) {
      const std::size_t idx = rem % ext[a];
      rem /= ext[a];
      if (idx == 0 || idx + 1 == ext[a]) on_face = true;
    }
    if (on_face) edge = std::max(edge, static_cast<double>(std::abs(f[i])));
  }
  return edge / global;
}

template <typename T>
bool is_decaying(const Field<T>& f) {
  return boundary_ratio(f) <= kDecayGuard;
}

/// Throws DecayGuard naming `what` if the field does not vanish at the box edge.
template <typename T>
void require_decaying(const Field<T>& f, std::string_view what) {
  const double r = boundary_ratio(f);
  if (!(r <= kDecayGuard)) {
    throw DecayGuard(std::string(what) + " is not decaying: boundary/max = " + format_value(r));
  }
}

template <typename T>
void require_finite(const Field<T>& f, std::string_view what) {
  for (const auto& v : f.values()) {
    if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) {
      throw InvalidArgument(std::string(what) + " contains non-finite values");
    }
  }
}

/// Samples g(x) on a 1-axis field.
inline RealField sample(const Grid1D& grid, const std::function<double(double)>& g) {
  RealField f({grid});
  for (std::size_t j = 0; j < grid.size(); ++j) f(j) = g(grid.point(j));
  return f;
}

/// Samples g(x, y) on a 2-axis field.
inline RealField sample(const Grid1D& gx, const Grid1D& gy,
                        const std::function<double(double, double)>& g) {
  RealField f({gx, gy});
  for (std::size_t i = 0; i < gx.size(); ++i) {
    for (std::size_t j = 0; j < gy.size(); ++j) f(i, j) = g(gx.point(i), gy.point(j));
  }
  return f;
}

}  // namespace moyalkit
