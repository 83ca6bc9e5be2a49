#include "dlimit/diagnostics.hpp"

#include <cmath>
#include <sstream>

#include "dlimit/errors.hpp"

namespace dlimit {

void check_positivity(const ScalarField& p, const ScalarField& S, const EosClosure& eos,
                      double t) {
  auto pp = p.phys();
  auto ps = S.phys();
  double min_p = pp[0];
  double min_S = ps[0];
  for (std::size_t i = 0; i < pp.size(); ++i) {
    if (!std::isfinite(pp[i]) || !std::isfinite(ps[i])) {
      std::ostringstream os;
      os << "non-finite pressure or entropy at t=" << t;
      throw NumericalError(os.str());
    }
    min_p = std::min(min_p, pp[i]);
    min_S = std::min(min_S, ps[i]);
  }
  if (!(min_p > eos.p_floor()) || !(min_S > eos.S_floor())) {
    std::ostringstream os;
    os << "positivity monitor: t=" << t << " min p=" << min_p << " min S=" << min_S
       << " (floors " << eos.p_floor() << ", " << eos.S_floor() << ")";
    throw PositivityError(os.str(), t, min_p, min_S);
  }
}

ScalarField density_field(const ScalarField& S, const ScalarField& p, const EosClosure& eos) {
  return map(S, p, [&](double s, double q) { return eos.density(s, q); });
}

ScalarField coeff_a_field(const ScalarField& S, const ScalarField& p, const EosClosure& eos) {
  return map(S, p, [&](double s, double q) { return eos.coeff_a(s, q); });
}

ScalarField coeff_b_field(const ScalarField& S, const ScalarField& p, const EosClosure& eos) {
  return map(S, p, [&](double s, double q) { return eos.coeff_b(s, q); });
}

}  // namespace dlimit
