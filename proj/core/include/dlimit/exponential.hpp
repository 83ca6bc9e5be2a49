#pragma once

#include <array>
#include <vector>

#include "dlimit/fields.hpp"

namespace dlimit {

/// phi-functions of the constant-coefficient Maxwell-damping operator
///
///   eps dE/dt = curl H - E,   dH/dt = -curl E
///
/// evaluated mode by mode. On each wavevector the transverse part reduces to
/// the 2x2 matrix [[-1/eps, kappa/eps], [-kappa, 0]] acting on (E_T, H_T)
/// with curl -> i k x, and the longitudinal part of E decays as exp(-t/eps).
///
/// Tables are built for phi_0..phi_3 at arguments c*h*L for c in {1/2, 1}.
class MaxwellDampingPropagator {
 public:
  static constexpr int kMaxPhi = 3;

  MaxwellDampingPropagator(const TorusGrid& grid, double epsilon, double h);

  const TorusGrid& grid() const noexcept { return grid_; }
  double epsilon() const noexcept { return epsilon_; }
  double step() const noexcept { return h_; }

  /// (E, H) <- phi_j(c h L) (E, H) with c = 1 (`half == false`) or 1/2.
  void apply(int j, bool half, VectorField& E, VectorField& H) const;

  /// Entries of phi_j(c h M(kappa)) for the transverse 2x2 block, for tests.
  std::array<double, 4> block(int j, bool half, double kappa_sq) const;

 private:
  struct Entry {
    double f11, f12_over_k, f21_over_k, f22;
  };
  const Entry& entry(int j, bool half, long kappa_sq) const;

  TorusGrid grid_;
  double epsilon_;
  double h_;
  long max_kappa_sq_ = 0;
  // [half][j] -> per integer kappa^2
  std::array<std::array<std::vector<Entry>, kMaxPhi + 1>, 2> table_;
};

}  // namespace dlimit
