#include "dlimit/exponential.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "dlimit/errors.hpp"

namespace dlimit {

namespace {

using Mat2 = Eigen::Matrix2d;

// phi_0..phi_3 of a 2x2 matrix from the exponential of the augmented
// block matrix [[A, I, 0, 0], [0, 0, I, 0], [0, 0, 0, I], [0, 0, 0, 0]].
std::array<Mat2, 4> phi_functions(const Mat2& A) {
  Eigen::Matrix<double, 8, 8> Z = Eigen::Matrix<double, 8, 8>::Zero();
  Z.block<2, 2>(0, 0) = A;
  Z.block<2, 2>(0, 2).setIdentity();
  Z.block<2, 2>(2, 4).setIdentity();
  Z.block<2, 2>(4, 6).setIdentity();
  const Eigen::Matrix<double, 8, 8> X = Z.exp();
  return {X.block<2, 2>(0, 0), X.block<2, 2>(0, 2), X.block<2, 2>(0, 4), X.block<2, 2>(0, 6)};
}

}  // namespace

MaxwellDampingPropagator::MaxwellDampingPropagator(const TorusGrid& grid, double epsilon,
                                                   double h)
    : grid_(grid), epsilon_(epsilon), h_(h) {
  if (!(epsilon > 0.0)) throw UsageError("MaxwellDampingPropagator: epsilon must be > 0");
  if (!(h > 0.0)) throw UsageError("MaxwellDampingPropagator: step must be > 0");

  std::array<std::span<const double>, 3> kd{grid.derivative_wavenumber(0),
                                            grid.derivative_wavenumber(1),
                                            grid.derivative_wavenumber(2)};
  for (std::size_t m = 0; m < grid.spec_size(); ++m) {
    const double kk = kd[0][m] * kd[0][m] + kd[1][m] * kd[1][m] + kd[2][m] * kd[2][m];
    max_kappa_sq_ = std::max(max_kappa_sq_, std::lround(kk));
  }

  for (int half = 0; half < 2; ++half) {
    const double scale = half ? 0.5 * h : h;
    for (auto& v : table_[half]) v.resize(static_cast<std::size_t>(max_kappa_sq_) + 1);
    for (long q = 0; q <= max_kappa_sq_; ++q) {
      const double kappa = std::sqrt(static_cast<double>(q));
      // Balanced form diag(1, sqrt(eps))^{-1} M diag(1, sqrt(eps)) has
      // antisymmetric off-diagonals kappa/sqrt(eps); undo the similarity after.
      const double root = std::sqrt(epsilon);
      Mat2 M;
      M << -1.0 / epsilon, kappa / root, -kappa / root, 0.0;
      const auto phis = phi_functions(scale * M);
      for (int j = 0; j <= kMaxPhi; ++j) {
        const Mat2& F = phis[j];
        Entry e{F(0, 0), 0.0, 0.0, F(1, 1)};
        if (q > 0) {
          e.f12_over_k = F(0, 1) / root / kappa;
          e.f21_over_k = F(1, 0) * root / kappa;
        }
        table_[half][j][q] = e;
      }
    }
  }
}

const MaxwellDampingPropagator::Entry& MaxwellDampingPropagator::entry(int j, bool half,
                                                                      long q) const {
  return table_[half ? 1 : 0][j][static_cast<std::size_t>(q)];
}

std::array<double, 4> MaxwellDampingPropagator::block(int j, bool half, double kappa_sq) const {
  const long q = std::lround(kappa_sq);
  if (q < 0 || q > max_kappa_sq_ || j < 0 || j > kMaxPhi) {
    throw UsageError("MaxwellDampingPropagator::block: out of range");
  }
  const auto& e = entry(j, half, q);
  const double kappa = std::sqrt(static_cast<double>(q));
  return {e.f11, e.f12_over_k * kappa, e.f21_over_k * kappa, e.f22};
}

void MaxwellDampingPropagator::apply(int j, bool half, VectorField& E, VectorField& H) const {
  if (j < 0 || j > kMaxPhi) throw UsageError("MaxwellDampingPropagator::apply: bad index");
  if (!(E.grid() == grid_) || !(H.grid() == grid_)) {
    throw UsageError("MaxwellDampingPropagator::apply: grid mismatch");
  }
  std::array<std::span<Complex>, 3> e{E[0].mutable_spec(), E[1].mutable_spec(),
                                      E[2].mutable_spec()};
  std::array<std::span<Complex>, 3> b{H[0].mutable_spec(), H[1].mutable_spec(),
                                      H[2].mutable_spec()};
  std::array<std::span<const double>, 3> kd{grid_.derivative_wavenumber(0),
                                            grid_.derivative_wavenumber(1),
                                            grid_.derivative_wavenumber(2)};
  const Entry& zero = entry(j, half, 0);
  const Complex I(0.0, 1.0);

  for (std::size_t m = 0; m < grid_.spec_size(); ++m) {
    const double k0 = kd[0][m], k1 = kd[1][m], k2 = kd[2][m];
    const double kk = k0 * k0 + k1 * k1 + k2 * k2;
    const std::array<Complex, 3> ev{e[0][m], e[1][m], e[2][m]};
    const std::array<Complex, 3> hv{b[0][m], b[1][m], b[2][m]};
    if (kk == 0.0) {
      for (int a = 0; a < 3; ++a) {
        e[a][m] = zero.f11 * ev[a];
        b[a][m] = zero.f22 * hv[a];
      }
      continue;
    }
    const Entry& f = entry(j, half, std::lround(kk));
    const std::array<double, 3> kv{k0, k1, k2};
    const Complex ek = (k0 * ev[0] + k1 * ev[1] + k2 * ev[2]) / kk;
    const Complex hk = (k0 * hv[0] + k1 * hv[1] + k2 * hv[2]) / kk;
    // i k x v
    const std::array<Complex, 3> curl_h{I * (k1 * hv[2] - k2 * hv[1]), I * (k2 * hv[0] - k0 * hv[2]),
                                        I * (k0 * hv[1] - k1 * hv[0])};
    const std::array<Complex, 3> curl_e{I * (k1 * ev[2] - k2 * ev[1]), I * (k2 * ev[0] - k0 * ev[2]),
                                        I * (k0 * ev[1] - k1 * ev[0])};
    for (int a = 0; a < 3; ++a) {
      const Complex e_long = kv[a] * ek;
      const Complex h_long = kv[a] * hk;
      e[a][m] = f.f11 * (ev[a] - e_long) + zero.f11 * e_long + f.f12_over_k * curl_h[a];
      b[a][m] = f.f22 * (hv[a] - h_long) + zero.f22 * h_long + f.f21_over_k * curl_e[a];
    }
  }
}

}  // namespace dlimit
