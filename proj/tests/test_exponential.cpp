#include <gtest/gtest.h>

#include <cmath>

#include "dlimit/errors.hpp"
#include "dlimit/exponential.hpp"
#include "dlimit/spectral.hpp"

using namespace dlimit;

namespace {

// phi_j(c h M) for M = [[-1/eps, k/eps], [-k, 0]], eps = 0.1, h = 0.05, k^2 = 2,
// from an eigen-decomposition at 30 digits. Row-major.
constexpr double kFull[4][4] = {
    {0.58856728562925817, 0.55184331407386847, -0.055184331407386847, 0.97877943516334831},
    {0.78042429906818027, 0.30010410593210428, -0.030010410593210428, 0.99262994743469721},
    {0.42441129673303388, 0.10422828293253822, -0.010422828293253822, 0.49811182238606175},
    {0.14740105130605574, 0.026702863898007477, -0.0026702863898007477, 0.16628282744543827}};
constexpr double kHalf[4][4] = {
    {0.77350658709480613, 0.31217230257978908, -0.031217230257978908, 0.99424573914759375},
    {0.88295660821115048, 0.16275507477810957, -0.016275507477810957, 0.99804182525927539},
    {0.46034086819249961, 0.055385545516583379, -0.0055385545516583379, 0.4995043630069919},
    {0.15665397925796917, 0.014018731150517366, -0.0014018731150517366, 0.16656671911813109}};

}  // namespace

TEST(Exponential, PhiBlocksMatchReference) {
  const MaxwellDampingPropagator prop(TorusGrid(16, 2), 0.1, 0.05);
  for (int j = 0; j <= 3; ++j) {
    const auto full = prop.block(j, false, 2.0);
    const auto half = prop.block(j, true, 2.0);
    for (int e = 0; e < 4; ++e) {
      EXPECT_NEAR(full[e], kFull[j][e], 1e-13) << "j=" << j << " entry " << e;
      EXPECT_NEAR(half[e], kHalf[j][e], 1e-13) << "j=" << j << " entry " << e;
    }
  }
}

TEST(Exponential, ZeroModeIsScalarDecay) {
  const double eps = 0.02, h = 0.01;
  const MaxwellDampingPropagator prop(TorusGrid(16, 2), eps, h);
  const auto b = prop.block(0, false, 0.0);
  EXPECT_NEAR(b[0], std::exp(-h / eps), 1e-15);
  EXPECT_NEAR(b[3], 1.0, 1e-15);
  const auto b1 = prop.block(1, false, 0.0);
  EXPECT_NEAR(b1[0], std::expm1(-h / eps) / (-h / eps), 1e-14);
}

// phi_0 applied to a transverse plane wave must reproduce the exact solution of
// eps E' = curl H - E, H' = -curl E.
TEST(Exponential, ApplyPropagatesPlaneWave) {
  const TorusGrid g(16, 2);
  const double eps = 0.1, h = 0.05;
  const MaxwellDampingPropagator prop(g, eps, h);
  // k = (1, 1, 0) with E along z and H = 0.
  VectorField E = VectorField::from_function(g, [](double x, double y, double) {
    return std::array<double, 3>{0.0, 0.0, std::cos(x + y)};
  });
  VectorField H(g);
  prop.apply(0, false, E, H);
  EXPECT_NEAR(E[2].phys()[0], kFull[0][0], 1e-13);
  EXPECT_LE(E[0].max_abs() + E[1].max_abs(), 1e-14);
  EXPECT_NEAR(magnitude(H).max(), std::abs(kFull[0][2]), 1e-13);
  EXPECT_LE(div(H).max_abs(), 1e-13);
}

TEST(Exponential, RejectsBadArguments) {
  EXPECT_THROW(MaxwellDampingPropagator(TorusGrid(16, 2), 0.0, 0.1), UsageError);
  EXPECT_THROW(MaxwellDampingPropagator(TorusGrid(16, 2), 0.1, -1.0), UsageError);
  const MaxwellDampingPropagator prop(TorusGrid(16, 2), 0.1, 0.1);
  EXPECT_THROW(prop.block(4, false, 1.0), UsageError);
}
