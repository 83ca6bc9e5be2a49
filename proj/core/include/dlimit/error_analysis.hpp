#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dlimit/em_system.hpp"
#include "dlimit/eos.hpp"
#include "dlimit/fields.hpp"
#include "dlimit/mhd_system.hpp"

namespace dlimit {

/// Differences between an Euler-Maxwell state and the MHD state at the same time.
struct ErrorState {
  ScalarField P;
  VectorField U;
  ScalarField Phi;
  VectorField F;  ///< E minus the induced field curl H0 - u0 x H0
  VectorField G;
  double t = 0.0;

  explicit ErrorState(const TorusGrid& g) : P(g), U(g), Phi(g), F(g), G(g) {}
  const TorusGrid& grid() const { return P.grid(); }
};

/// Throws UsageError when the grids or the times differ.
ErrorState error_state(const EmState& em, const MhdState& mhd);

struct SourceTerms {
  ScalarField f1;
  VectorField f2;
  ScalarField f3;
  VectorField f4;
};

/// Right-hand sides of the error system. bg_rates must hold the complete time
/// derivatives of the background (mhd_full_rhs).
SourceTerms source_terms(const ErrorState& W, const MhdState& bg, const MhdRates& bg_rates,
                         double epsilon, const EosClosure& eos);
SourceTerms source_terms(const ErrorState& W, const MhdState& bg, double epsilon,
                         const EosClosure& eos);

/// L2 norms of the defect of each error equation, in the order
/// pressure, velocity, entropy, electric, magnetic.
struct ErrorResidual {
  double t = 0.0;
  std::array<double, 5> eq{};

  double total() const { return eq[0] + eq[1] + eq[2] + eq[3] + eq[4]; }
};

/// Time derivatives of the error fields, however they were obtained.
struct ErrorRates {
  ScalarField dP;
  VectorField dU;
  ScalarField dPhi;
  VectorField dF;
  VectorField dG;
};

/// Defect of the error system for the given W, background and dW/dt.
ErrorResidual error_defect(const ErrorState& W, const ErrorRates& dW, const MhdState& bg,
                           double epsilon, const EosClosure& eos);

/// Residual with dW/dt taken from the two solvers' right-hand sides. Checks the
/// source-term algebra without any time discretisation error.
ErrorResidual instantaneous_residual(const EmState& em, const MhdState& mhd, double epsilon,
                                     const EosClosure& eos);

/// Residual along time-aligned snapshot trajectories with uniform spacing. dW/dt is
/// formed by fourth-order central differences, so the two first and two last
/// snapshots get no entry. Needs at least five snapshots.
std::vector<ErrorResidual> error_residual(const std::vector<EmState>& em_traj,
                                          const std::vector<MhdState>& mhd_traj,
                                          double epsilon, const EosClosure& eos);

/// Pointwise 11x11 matrices of the symmetric hyperbolic form, row-major.
/// Unknown ordering: P, U1..U3, Phi, F1..F3, G1..G3.
struct SymmetricForm {
  static constexpr int kDim = 11;
  using Matrix = std::array<double, kDim * kDim>;

  std::vector<Matrix> D;
  std::array<std::vector<Matrix>, 3> A;

  std::size_t points() const { return D.size(); }
};

SymmetricForm symmetric_form(const ErrorState& W, const MhdState& bg, double epsilon,
                             const EosClosure& eos);

struct EnergyLevel {
  double s = 0.0;
  double norm = 0.0;      ///< ||(P,U,Phi,G)||_s
  double weighted = 0.0;  ///< sqrt(norm^2 + eps ||F||_s^2)
  double f_norm = 0.0;    ///< ||F||_s
  double gamma = 0.0;     ///< weighted^2
};

struct EnergyReport {
  double t = 0.0;
  std::vector<EnergyLevel> levels;

  /// Throws UsageError if s was not requested.
  const EnergyLevel& at(double s) const;
};

/// Tuple norms are sums of the component norms. Throws NumericalError on
/// non-finite input and UsageError on an empty s_list.
EnergyReport energy_report(const ErrorState& W, double epsilon, const std::vector<double>& s_list);

/// Running time integral of ||F||^2 by the trapezoidal rule.
class DampingIntegral {
 public:
  void add(double t, double f_l2);
  double value() const { return value_; }

 private:
  bool started_ = false;
  double t_ = 0.0;
  double sq_ = 0.0;
  double value_ = 0.0;
};

/// |integral of (curl F . G - curl G . F)|.
double cancellation_check(const VectorField& F, const VectorField& G);

/// ||(P,U)||_sigma / (||L(P,U)||_{sigma-1} + ||curl U||_{sigma-1} + ||(P,U)||_{sigma-1})
/// with L(P,U) = (div U, grad P). sigma must be 1..4.
double div_curl_bound_check(const VectorField& U, int sigma, const ScalarField& P);

}  // namespace dlimit
