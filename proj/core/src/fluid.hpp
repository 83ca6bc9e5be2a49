#pragma once

// Shared pieces of the Euler-Maxwell and MHD right-hand sides.

#include "dlimit/eos.hpp"
#include "dlimit/fields.hpp"

namespace dlimit::detail {

struct FluidRates {
  ScalarField dp;
  VectorField du;
  ScalarField dS;
};

/// Pressure, momentum and entropy rates given an already dealiased Lorentz
/// force density and Joule heating.
FluidRates fluid_rates(const ScalarField& p, const VectorField& u, const ScalarField& S,
                       const VectorField& lorentz, const ScalarField& heating,
                       const EosClosure& eos);

}  // namespace dlimit::detail
