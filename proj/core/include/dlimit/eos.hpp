#pragma once

namespace dlimit {

/// Ideal-gas closure in (S, p) variables with unit specific heat:
///
///   rho   = r(S,p)     = p^{1/gamma} exp(-S/gamma)
///   theta = Theta(S,p) = p / ((gamma - 1) rho)
///   a     = (1/r) dr/dp = 1 / (gamma p)
///   b     = r Theta     = p / (gamma - 1)
///
/// Internal energy e = theta, entropy normalised so that S = ln(p / rho^gamma).
class EosClosure {
 public:
  EosClosure() = default;
  EosClosure(double gamma, double p_floor, double S_floor);

  double gamma() const noexcept { return gamma_; }
  double p_floor() const noexcept { return p_floor_; }
  double S_floor() const noexcept { return S_floor_; }

  double density(double S, double p) const;
  double temperature(double S, double p) const;
  double coeff_a(double S, double p) const;
  double coeff_b(double S, double p) const;
  double internal_energy(double S, double p) const { return temperature(S, p); }

  /// Acoustic speed 1/sqrt(a r) = sqrt(gamma p / rho).
  double sound_speed(double S, double p) const;

  /// Central-difference defect of theta dS - de - p d(1/rho) along the
  /// direction (dS, dp), divided by the path length 2|(dS,dp)|. Zero for a
  /// zero direction.
  double gibbs_residual_along(double S, double p, double dS, double dp) const;

  /// Max of the directional residuals with steps dS = h and dp = h*p.
  double gibbs_residual(double S, double p, double h) const;

 private:
  void require_admissible(double p) const;

  double gamma_ = 5.0 / 3.0;
  double p_floor_ = 1e-8;
  double S_floor_ = 1e-8;
};

}  // namespace dlimit
