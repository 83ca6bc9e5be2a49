#include "dlimit/eos.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dlimit/errors.hpp"

namespace dlimit {

EosClosure::EosClosure(double gamma, double p_floor, double S_floor)
    : gamma_(gamma), p_floor_(p_floor), S_floor_(S_floor) {
  if (!(gamma > 1.0)) {
    std::ostringstream os;
    os << "EosClosure: gamma must exceed 1, got " << gamma;
    throw UsageError(os.str());
  }
  if (!(p_floor > 0.0)) throw UsageError("EosClosure: p_floor must be positive");
}

void EosClosure::require_admissible(double p) const {
  if (!(p > p_floor_)) {
    std::ostringstream os;
    os << "EosClosure: pressure " << p << " is not above the floor " << p_floor_;
    throw DomainError(os.str());
  }
}

double EosClosure::density(double S, double p) const {
  require_admissible(p);
  return std::pow(p, 1.0 / gamma_) * std::exp(-S / gamma_);
}

double EosClosure::temperature(double S, double p) const {
  return p / ((gamma_ - 1.0) * density(S, p));
}

double EosClosure::coeff_a(double S, double p) const {
  (void)S;
  require_admissible(p);
  return 1.0 / (gamma_ * p);
}

double EosClosure::coeff_b(double S, double p) const {
  (void)S;
  require_admissible(p);
  return p / (gamma_ - 1.0);
}

double EosClosure::sound_speed(double S, double p) const {
  return std::sqrt(gamma_ * p / density(S, p));
}

double EosClosure::gibbs_residual_along(double S, double p, double dS,
                                        double dp) const {
  const double len = std::hypot(dS, dp);
  if (len == 0.0) return 0.0;
  const double theta = temperature(S, p);
  const double e_plus = internal_energy(S + dS, p + dp);
  const double e_minus = internal_energy(S - dS, p - dp);
  const double v_plus = 1.0 / density(S + dS, p + dp);
  const double v_minus = 1.0 / density(S - dS, p - dp);
  const double defect =
      theta * (2.0 * dS) - (e_plus - e_minus) - p * (v_plus - v_minus);
  return std::abs(defect) / (2.0 * len);
}

double EosClosure::gibbs_residual(double S, double p, double h) const {
  if (!(h > 0.0)) throw UsageError("gibbs_residual: step must be positive");
  return std::max(gibbs_residual_along(S, p, h, 0.0),
                  gibbs_residual_along(S, p, 0.0, h * p));
}

}  // namespace dlimit
