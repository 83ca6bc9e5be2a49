#include "dlimit/spectral.hpp"

#include <cmath>

#include "dlimit/errors.hpp"

namespace dlimit {

ScalarField partial(const ScalarField& f, int axis) {
  const TorusGrid& g = f.grid();
  ScalarField out(g);
  auto src = f.spec();
  auto dst = out.mutable_spec();
  auto kd = g.derivative_wavenumber(axis);
  for (std::size_t m = 0; m < dst.size(); ++m) dst[m] = Complex(0.0, kd[m]) * src[m];
  return out;
}

VectorField grad(const ScalarField& f) {
  return VectorField(partial(f, 0), partial(f, 1), partial(f, 2));
}

ScalarField div(const VectorField& v) {
  const TorusGrid& g = v.grid();
  ScalarField out(g);
  auto dst = out.mutable_spec();
  std::array<std::span<const Complex>, 3> s{v[0].spec(), v[1].spec(), v[2].spec()};
  std::array<std::span<const double>, 3> kd{g.derivative_wavenumber(0),
                                            g.derivative_wavenumber(1),
                                            g.derivative_wavenumber(2)};
  const Complex I(0.0, 1.0);
  for (std::size_t m = 0; m < dst.size(); ++m) {
    dst[m] = I * (kd[0][m] * s[0][m] + kd[1][m] * s[1][m] + kd[2][m] * s[2][m]);
  }
  return out;
}

VectorField curl(const VectorField& v) {
  const TorusGrid& g = v.grid();
  VectorField out(g);
  std::array<std::span<Complex>, 3> d{out[0].mutable_spec(), out[1].mutable_spec(),
                                      out[2].mutable_spec()};
  std::array<std::span<const Complex>, 3> s{v[0].spec(), v[1].spec(), v[2].spec()};
  std::array<std::span<const double>, 3> kd{g.derivative_wavenumber(0),
                                            g.derivative_wavenumber(1),
                                            g.derivative_wavenumber(2)};
  const Complex I(0.0, 1.0);
  for (std::size_t m = 0; m < g.spec_size(); ++m) {
    d[0][m] = I * (kd[1][m] * s[2][m] - kd[2][m] * s[1][m]);
    d[1][m] = I * (kd[2][m] * s[0][m] - kd[0][m] * s[2][m]);
    d[2][m] = I * (kd[0][m] * s[1][m] - kd[1][m] * s[0][m]);
  }
  return out;
}

const std::array<Mat3, 3>& maxwell_matrices() {
  static const std::array<Mat3, 3> B{{
      {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}}},
      {{{0, 0, -1}, {0, 0, 0}, {1, 0, 0}}},
      {{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}},
  }};
  return B;
}

VectorField curl_via_B(const VectorField& v) {
  const TorusGrid& g = v.grid();
  const auto& B = maxwell_matrices();
  VectorField out(g);
  for (int i = 0; i < 3; ++i) {
    // Column j of B_i^T is row j of B_i, so (B_i^T w)_r = sum_c B_i[c][r] w_c.
    std::array<ScalarField, 3> dv{partial(v[0], i), partial(v[1], i), partial(v[2], i)};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        if (B[i][c][r] != 0.0) out[r].axpy(B[i][c][r], dv[c]);
      }
    }
  }
  return out;
}

ScalarField dealias(ScalarField f) {
  auto s = f.mutable_spec();
  auto keep = f.grid().dealias_mask();
  for (std::size_t m = 0; m < s.size(); ++m) s[m] *= keep[m];
  return f;
}

VectorField dealias(VectorField v) {
  for (auto& c : v.c) c = dealias(std::move(c));
  return v;
}

namespace {
double weighted_sum(const ScalarField& f, double s) {
  const TorusGrid& g = f.grid();
  auto c = f.spec();
  auto w = g.hermitian_weight();
  auto k2 = g.k_squared();
  double acc = 0.0;
  if (s == 0.0) {
    for (std::size_t m = 0; m < c.size(); ++m) acc += w[m] * std::norm(c[m]);
  } else {
    for (std::size_t m = 0; m < c.size(); ++m) {
      acc += w[m] * std::pow(1.0 + k2[m], s) * std::norm(c[m]);
    }
  }
  return acc * TorusGrid::kVolume;
}

void require_index(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw UsageError("sobolev_norm: regularity index must be finite and >= 0");
  }
}
}  // namespace

double sobolev_norm(const ScalarField& f, double s) {
  require_index(s);
  return std::sqrt(weighted_sum(f, s));
}

double sobolev_norm(const VectorField& v, double s) {
  require_index(s);
  return std::sqrt(weighted_sum(v[0], s) + weighted_sum(v[1], s) + weighted_sum(v[2], s));
}

double l2_norm(const ScalarField& f) { return sobolev_norm(f, 0.0); }
double l2_norm(const VectorField& v) { return sobolev_norm(v, 0.0); }

double integrate(const ScalarField& f) { return f.mean() * TorusGrid::kVolume; }

double inner(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw UsageError("inner: grid mismatch");
  auto pa = a.phys();
  auto pb = b.phys();
  double acc = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) acc += pa[i] * pb[i];
  return acc / static_cast<double>(pa.size()) * TorusGrid::kVolume;
}

double inner(const VectorField& a, const VectorField& b) {
  return inner(a[0], b[0]) + inner(a[1], b[1]) + inner(a[2], b[2]);
}

VectorField leray_project(const VectorField& v) {
  const TorusGrid& g = v.grid();
  VectorField out = v;
  std::array<std::span<Complex>, 3> d{out[0].mutable_spec(), out[1].mutable_spec(),
                                      out[2].mutable_spec()};
  std::array<std::span<const double>, 3> kd{g.derivative_wavenumber(0),
                                            g.derivative_wavenumber(1),
                                            g.derivative_wavenumber(2)};
  for (std::size_t m = 0; m < g.spec_size(); ++m) {
    const double kk = kd[0][m] * kd[0][m] + kd[1][m] * kd[1][m] + kd[2][m] * kd[2][m];
    if (kk == 0.0) continue;
    const Complex kv = kd[0][m] * d[0][m] + kd[1][m] * d[1][m] + kd[2][m] * d[2][m];
    for (int a = 0; a < 3; ++a) d[a][m] -= kd[a][m] * kv / kk;
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  return apply_radial_multiplier(f, [](double k2) { return -k2; });
}

VectorField laplacian(const VectorField& v) {
  return apply_radial_multiplier(v, [](double k2) { return -k2; });
}

ScalarField inverse_laplacian(const ScalarField& f) {
  return apply_radial_multiplier(f, [](double k2) { return k2 == 0.0 ? 0.0 : -1.0 / k2; });
}

ScalarField apply_radial_multiplier(ScalarField f, const std::function<double(double)>& mult) {
  auto s = f.mutable_spec();
  auto k2 = f.grid().k_squared();
  for (std::size_t m = 0; m < s.size(); ++m) s[m] *= mult(k2[m]);
  return f;
}

VectorField apply_radial_multiplier(VectorField v, const std::function<double(double)>& mult) {
  for (auto& c : v.c) c = apply_radial_multiplier(std::move(c), mult);
  return v;
}

}  // namespace dlimit
