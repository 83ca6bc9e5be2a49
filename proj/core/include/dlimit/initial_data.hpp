#pragma once

#include <cstdint>

#include "dlimit/em_system.hpp"
#include "dlimit/eos.hpp"
#include "dlimit/mhd_system.hpp"

namespace dlimit {

/// p = 1 + amp sin x cos y, S = 1 + amp cos x, u = amp (sin y, sin x, 0),
/// H = P[amp (cos y, cos x, sin(x + y))] + (0, 0, 1). Requires 0 <= amp < 0.5.
MhdState default_background_ic(const TorusGrid& grid, const EosClosure& eos, double amp);

/// ||(P,U,Phi,G)||_s + sqrt(eps) ||F||_s between the two states.
double preparation_measure(const EmState& em, const MhdState& mhd, double epsilon, double s);

/// Euler-Maxwell data within perturb_amp * eps of the MHD data: random
/// low-mode perturbations (|k_i| <= 2) of size eps on p, u, S, H and E, with
/// H kept solenoidal and E centred on the induced field. The bound is checked
/// in H^s before returning; a failure throws NumericalError with the ratio.
EmState well_prepared_init(const MhdState& mhd_ic, double epsilon, double perturb_amp,
                           std::uint64_t seed, double s = 4.0);

}  // namespace dlimit
