#include "random_fields.hpp"

#include "dlimit/errors.hpp"

#include <array>
#include <cmath>
#include <map>
#include <vector>

namespace dlimit::detail {

namespace {

// One wavevector of each +-k pair on the active axes, k != 0.
std::vector<std::array<int, 3>> half_modes(int dims, int kmax) {
  std::vector<std::array<int, 3>> out;
  const int r2 = dims >= 2 ? kmax : 0;
  const int r3 = dims >= 3 ? kmax : 0;
  for (int a = -kmax; a <= kmax; ++a)
    for (int b = -r2; b <= r2; ++b)
      for (int c = -r3; c <= r3; ++c)
        if (a > 0 || (a == 0 && b > 0) || (a == 0 && b == 0 && c > 0)) out.push_back({a, b, c});
  return out;
}

}  // namespace

double unit_uniform(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

ScalarField random_trig_field(const TorusGrid& grid, std::mt19937_64& rng, int kmax) {
  if (2 * kmax >= grid.n()) throw UsageError("random_trig_field: kmax must be below n/2");
  std::map<std::array<int, 3>, Complex> half;
  for (const auto& k : half_modes(grid.active_dims(), kmax)) {
    const double c = unit_uniform(rng);
    const double s = unit_uniform(rng);
    half[k] = Complex(c, -s);
  }
  // c cos(k.x) + s sin(k.x) puts (c - i s)/2 on k and its conjugate on -k.
  ScalarField out(grid);
  auto spec = out.mutable_spec();
  const auto k0 = grid.wavenumber(0), k1 = grid.wavenumber(1), k2 = grid.wavenumber(2);
  for (std::size_t m = 0; m < spec.size(); ++m) {
    const std::array<int, 3> k{static_cast<int>(k0[m]), static_cast<int>(k1[m]),
                               static_cast<int>(k2[m])};
    if (auto it = half.find(k); it != half.end()) {
      spec[m] = 0.5 * it->second;
    } else if (auto jt = half.find({-k[0], -k[1], -k[2]}); jt != half.end()) {
      spec[m] = 0.5 * std::conj(jt->second);
    } else {
      spec[m] = 0.0;
    }
  }
  return out;
}

VectorField random_trig_vector(const TorusGrid& grid, std::mt19937_64& rng, int kmax) {
  VectorField v(grid);
  for (int i = 0; i < 3; ++i) v[i] = random_trig_field(grid, rng, kmax);
  return v;
}

}  // namespace dlimit::detail
