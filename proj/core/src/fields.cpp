#include "dlimit/fields.hpp"

#include <algorithm>
#include <cmath>

#include "dlimit/errors.hpp"

namespace dlimit {

ScalarField::ScalarField(const TorusGrid& grid)
    : grid_(grid), phys_(grid.size(), 0.0), spec_(grid.spec_size()) {}

ScalarField::ScalarField(const TorusGrid& grid, double value)
    : grid_(grid), phys_(grid.size(), value), spec_(grid.spec_size()) {}

ScalarField ScalarField::from_function(
    const TorusGrid& grid, const std::function<double(double, double, double)>& f) {
  ScalarField out(grid);
  auto p = out.mutable_phys();
  const auto& s = grid.shape();
  for (int i0 = 0; i0 < s[0]; ++i0) {
    for (int i1 = 0; i1 < s[1]; ++i1) {
      for (int i2 = 0; i2 < s[2]; ++i2) {
        p[grid.index(i0, i1, i2)] =
            f(grid.coordinate(i0), grid.coordinate(i1), grid.coordinate(i2));
      }
    }
  }
  return out;
}

std::span<const double> ScalarField::phys() const {
  if (!phys_ok_) {
    grid_.inverse(spec_, phys_);
    phys_ok_ = true;
  }
  return phys_;
}

std::span<const Complex> ScalarField::spec() const {
  if (!spec_ok_) {
    grid_.forward(phys_, spec_);
    spec_ok_ = true;
  }
  return spec_;
}

std::span<double> ScalarField::mutable_phys() {
  phys();
  spec_ok_ = false;
  return phys_;
}

std::span<Complex> ScalarField::mutable_spec() {
  spec();
  phys_ok_ = false;
  return spec_;
}

void ScalarField::sync() const {
  phys();
  spec();
}

void ScalarField::check_grid(const ScalarField& o) const {
  if (!(grid_ == o.grid_)) throw UsageError("ScalarField: grid mismatch");
}

ScalarField& ScalarField::axpy(double s, const ScalarField& o) {
  check_grid(o);
  if (spec_ok_ && o.spec_ok_ && !(phys_ok_ && o.phys_ok_)) {
    auto dst = mutable_spec();
    auto src = o.spec();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += s * src[i];
  } else {
    auto dst = mutable_phys();
    auto src = o.phys();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += s * src[i];
  }
  return *this;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) { return axpy(1.0, o); }
ScalarField& ScalarField::operator-=(const ScalarField& o) { return axpy(-1.0, o); }

ScalarField& ScalarField::operator*=(double s) {
  if (phys_ok_) {
    for (auto& x : phys_) x *= s;
  }
  if (spec_ok_) {
    for (auto& x : spec_) x *= s;
  }
  return *this;
}

double ScalarField::min() const {
  auto p = phys();
  return *std::min_element(p.begin(), p.end());
}

double ScalarField::max() const {
  auto p = phys();
  return *std::max_element(p.begin(), p.end());
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double x : phys()) m = std::max(m, std::abs(x));
  return m;
}

double ScalarField::mean() const { return spec()[0].real(); }

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw UsageError("ScalarField product: grid mismatch");
  ScalarField out(a.grid());
  auto o = out.mutable_phys();
  auto pa = a.phys();
  auto pb = b.phys();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = pa[i] * pb[i];
  return out;
}

ScalarField map(const ScalarField& a, const std::function<double(double)>& f) {
  ScalarField out(a.grid());
  auto o = out.mutable_phys();
  auto pa = a.phys();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = f(pa[i]);
  return out;
}

ScalarField map(const ScalarField& a, const ScalarField& b,
                const std::function<double(double, double)>& f) {
  if (!(a.grid() == b.grid())) throw UsageError("map: grid mismatch");
  ScalarField out(a.grid());
  auto o = out.mutable_phys();
  auto pa = a.phys();
  auto pb = b.phys();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = f(pa[i], pb[i]);
  return out;
}

VectorField VectorField::from_function(
    const TorusGrid& grid,
    const std::function<std::array<double, 3>(double, double, double)>& f) {
  VectorField out(grid);
  std::array<std::span<double>, 3> p{out.c[0].mutable_phys(), out.c[1].mutable_phys(),
                                     out.c[2].mutable_phys()};
  const auto& s = grid.shape();
  for (int i0 = 0; i0 < s[0]; ++i0) {
    for (int i1 = 0; i1 < s[1]; ++i1) {
      for (int i2 = 0; i2 < s[2]; ++i2) {
        const auto v = f(grid.coordinate(i0), grid.coordinate(i1), grid.coordinate(i2));
        const auto idx = grid.index(i0, i1, i2);
        for (int a = 0; a < 3; ++a) p[a][idx] = v[a];
      }
    }
  }
  return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) c[i] += o.c[i];
  return *this;
}
VectorField& VectorField::operator-=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
  return *this;
}
VectorField& VectorField::operator*=(double s) {
  for (auto& x : c) x *= s;
  return *this;
}
VectorField& VectorField::axpy(double s, const VectorField& o) {
  for (int i = 0; i < 3; ++i) c[i].axpy(s, o.c[i]);
  return *this;
}

double VectorField::max_abs() const {
  return std::max({c[0].max_abs(), c[1].max_abs(), c[2].max_abs()});
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }
VectorField operator-(VectorField a) { return a *= -1.0; }

VectorField operator*(const ScalarField& f, const VectorField& v) {
  return VectorField(f * v[0], f * v[1], f * v[2]);
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  const TorusGrid& g = a.grid();
  ScalarField out(g);
  auto o = out.mutable_phys();
  std::array<std::span<const double>, 3> pa{a[0].phys(), a[1].phys(), a[2].phys()};
  std::array<std::span<const double>, 3> pb{b[0].phys(), b[1].phys(), b[2].phys()};
  for (std::size_t i = 0; i < o.size(); ++i) {
    o[i] = pa[0][i] * pb[0][i] + pa[1][i] * pb[1][i] + pa[2][i] * pb[2][i];
  }
  return out;
}

VectorField cross(const VectorField& a, const VectorField& b) {
  const TorusGrid& g = a.grid();
  if (!(g == b.grid())) throw UsageError("cross: grid mismatch");
  VectorField out(g);
  std::array<std::span<double>, 3> o{out[0].mutable_phys(), out[1].mutable_phys(),
                                     out[2].mutable_phys()};
  std::array<std::span<const double>, 3> pa{a[0].phys(), a[1].phys(), a[2].phys()};
  std::array<std::span<const double>, 3> pb{b[0].phys(), b[1].phys(), b[2].phys()};
  for (std::size_t i = 0; i < g.size(); ++i) {
    o[0][i] = pa[1][i] * pb[2][i] - pa[2][i] * pb[1][i];
    o[1][i] = pa[2][i] * pb[0][i] - pa[0][i] * pb[2][i];
    o[2][i] = pa[0][i] * pb[1][i] - pa[1][i] * pb[0][i];
  }
  return out;
}

ScalarField magnitude(const VectorField& v) {
  return map(dot(v, v), [](double x) { return std::sqrt(x); });
}

}  // namespace dlimit
