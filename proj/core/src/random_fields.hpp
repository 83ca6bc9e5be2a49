#pragma once

#include <cstdint>
#include <random>

#include "dlimit/fields.hpp"

namespace dlimit::detail {

/// Uniform in [-1, 1) from the top 53 bits of the generator.
double unit_uniform(std::mt19937_64& rng);

/// Random trigonometric sum over modes with every active |k_i| <= kmax,
/// zero mean. Identical functions on every grid that resolves them.
ScalarField random_trig_field(const TorusGrid& grid, std::mt19937_64& rng, int kmax);
VectorField random_trig_vector(const TorusGrid& grid, std::mt19937_64& rng, int kmax);

}  // namespace dlimit::detail
