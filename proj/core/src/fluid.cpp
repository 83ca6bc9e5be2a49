#include "fluid.hpp"

#include "dlimit/diagnostics.hpp"
#include "dlimit/spectral.hpp"

namespace dlimit::detail {

FluidRates fluid_rates(const ScalarField& p, const VectorField& u, const ScalarField& S,
                       const VectorField& lorentz, const ScalarField& heating,
                       const EosClosure& eos) {
  const ScalarField inv_a = map(S, p, [&](double s, double q) { return 1.0 / eos.coeff_a(s, q); });
  const ScalarField inv_r = map(S, p, [&](double s, double q) { return 1.0 / eos.density(s, q); });
  const ScalarField inv_b = map(S, p, [&](double s, double q) { return 1.0 / eos.coeff_b(s, q); });

  const VectorField gp = grad(p);
  ScalarField dp = dealias(-(dot(u, gp) + div(u) * inv_a));

  VectorField du(p.grid());
  for (int i = 0; i < 3; ++i) {
    ScalarField acc = dot(u, grad(u[i]));
    acc -= (lorentz[i] - gp[i]) * inv_r;
    du[i] = dealias(-acc);
  }

  ScalarField dS = dealias(heating * inv_b - dot(u, grad(S)));
  return {std::move(dp), std::move(du), std::move(dS)};
}

}  // namespace dlimit::detail
