#include "dlimit/initial_data.hpp"

#include <cmath>
#include <sstream>

#include "dlimit/error_analysis.hpp"
#include "dlimit/errors.hpp"
#include "dlimit/spectral.hpp"
#include "random_fields.hpp"

namespace dlimit {

MhdState default_background_ic(const TorusGrid& grid, const EosClosure& eos, double amp) {
  if (!(amp >= 0.0 && amp < 0.5)) throw UsageError("default_background_ic: amp must lie in [0, 0.5)");
  MhdState s(grid);
  s.p = ScalarField::from_function(grid, [amp](double x, double y, double) {
    return 1.0 + amp * std::sin(x) * std::cos(y);
  });
  s.S = ScalarField::from_function(grid, [amp](double x, double, double) {
    return 1.0 + amp * std::cos(x);
  });
  s.u = VectorField::from_function(grid, [amp](double x, double y, double) {
    return std::array<double, 3>{amp * std::sin(y), amp * std::sin(x), 0.0};
  });
  s.H = leray_project(VectorField::from_function(grid, [amp](double x, double y, double) {
    return std::array<double, 3>{amp * std::cos(y), amp * std::cos(x), amp * std::sin(x + y)};
  }));
  s.H[2] += ScalarField(grid, 1.0);
  s.t = 0.0;
  check_positivity(s.p, s.S, eos, 0.0);
  return s;
}

double preparation_measure(const EmState& em, const MhdState& mhd, double epsilon, double s) {
  const ErrorState w = error_state(em, mhd);
  return sobolev_norm(w.P, s) + sobolev_norm(w.U, s) + sobolev_norm(w.Phi, s) +
         sobolev_norm(w.G, s) + std::sqrt(epsilon) * sobolev_norm(w.F, s);
}

EmState well_prepared_init(const MhdState& mhd_ic, double epsilon, double perturb_amp,
                           std::uint64_t seed, double s) {
  if (!(epsilon > 0.0)) throw UsageError("well_prepared_init: epsilon must be positive");
  if (!(perturb_amp >= 0.0)) throw UsageError("well_prepared_init: perturb_amp must be >= 0");
  const TorusGrid& grid = mhd_ic.grid();

  std::mt19937_64 rng(seed);
  const ScalarField dp = detail::random_trig_field(grid, rng, 2);
  const VectorField du = detail::random_trig_vector(grid, rng, 2);
  const ScalarField dS = detail::random_trig_field(grid, rng, 2);
  const VectorField dH = leray_project(detail::random_trig_vector(grid, rng, 2));
  const VectorField dE = detail::random_trig_vector(grid, rng, 2);

  // Scale so that eps * c * (A + B) = perturb_amp * eps; sqrt(eps) <= 1 on the
  // E part then leaves room whenever eps <= 1.
  const double A = sobolev_norm(dp, s) + sobolev_norm(du, s) + sobolev_norm(dS, s) +
                   sobolev_norm(dH, s);
  const double B = sobolev_norm(dE, s);
  const double c = perturb_amp * epsilon / (A + B);

  EmState em(mhd_ic.p + c * dp, mhd_ic.u + c * du, mhd_ic.S + c * dS,
             induced_E(mhd_ic.u, mhd_ic.H) + c * dE, mhd_ic.H + c * dH, mhd_ic.t);

  const double measured = preparation_measure(em, mhd_ic, epsilon, s);
  const double bound = perturb_amp * epsilon;
  if (measured > bound * (1.0 + 1e-9) + 1e-300) {
    std::ostringstream os;
    os << "well_prepared_init: measured H^" << s << " distance " << measured
       << " exceeds L0*eps = " << bound << " (ratio " << measured / bound << ")";
    throw NumericalError(os.str());
  }
  return em;
}

}  // namespace dlimit
