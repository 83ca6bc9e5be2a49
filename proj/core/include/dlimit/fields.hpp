#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "dlimit/torus.hpp"

namespace dlimit {

/// Real scalar field on a TorusGrid, held as physical samples and/or Fourier
/// coefficients. Either representation is produced on demand; accessors with
/// `mutable_` in the name invalidate the other one.
///
/// The lazy cache makes const access non-reentrant: call sync() before
/// sharing a field across threads.
class ScalarField {
 public:
  explicit ScalarField(const TorusGrid& grid);
  ScalarField(const TorusGrid& grid, double value);

  static ScalarField from_function(const TorusGrid& grid,
                                   const std::function<double(double, double, double)>& f);

  const TorusGrid& grid() const noexcept { return grid_; }

  std::span<const double> phys() const;
  std::span<const Complex> spec() const;
  std::span<double> mutable_phys();
  std::span<Complex> mutable_spec();

  /// Bring both representations up to date.
  void sync() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  /// this += s * o
  ScalarField& axpy(double s, const ScalarField& o);

  double min() const;
  double max() const;
  double max_abs() const;
  /// Spatial mean (the k = 0 coefficient).
  double mean() const;

 private:
  void check_grid(const ScalarField& o) const;

  TorusGrid grid_;
  mutable std::vector<double> phys_;
  mutable std::vector<Complex> spec_;
  mutable bool phys_ok_ = true;
  mutable bool spec_ok_ = false;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
/// Pointwise product in physical space (not dealiased).
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator-(ScalarField a);

/// Pointwise map f(x) in physical space.
ScalarField map(const ScalarField& a, const std::function<double(double)>& f);
ScalarField map(const ScalarField& a, const ScalarField& b,
                const std::function<double(double, double)>& f);

/// Three Cartesian components, each a ScalarField on the same grid.
struct VectorField {
  std::array<ScalarField, 3> c;

  explicit VectorField(const TorusGrid& grid) : c{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}
  VectorField(ScalarField x, ScalarField y, ScalarField z)
      : c{std::move(x), std::move(y), std::move(z)} {}

  static VectorField from_function(
      const TorusGrid& grid,
      const std::function<std::array<double, 3>(double, double, double)>& f);

  const TorusGrid& grid() const noexcept { return c[0].grid(); }
  ScalarField& operator[](int i) { return c[i]; }
  const ScalarField& operator[](int i) const { return c[i]; }

  void sync() const {
    for (const auto& x : c) x.sync();
  }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  VectorField& axpy(double s, const VectorField& o);

  double max_abs() const;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);
/// Scalar times vector, pointwise.
VectorField operator*(const ScalarField& f, const VectorField& v);
VectorField operator-(VectorField a);

ScalarField dot(const VectorField& a, const VectorField& b);
VectorField cross(const VectorField& a, const VectorField& b);
/// Pointwise Euclidean magnitude |v|.
ScalarField magnitude(const VectorField& v);

}  // namespace dlimit
