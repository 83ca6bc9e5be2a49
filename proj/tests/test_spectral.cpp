#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dlimit/errors.hpp"
#include "dlimit/spectral.hpp"

using namespace dlimit;

namespace {

constexpr double kPi = std::numbers::pi;

VectorField smooth_vector(const TorusGrid& g) {
  return VectorField::from_function(g, [](double x, double y, double z) {
    return std::array<double, 3>{std::sin(x + 2 * y) + std::cos(z), std::cos(3 * x) * std::sin(y),
                                 std::sin(x - y + z)};
  });
}

}  // namespace

TEST(Torus, RoundTrip) {
  const TorusGrid g(16, 3);
  ScalarField f = ScalarField::from_function(g, [](double x, double y, double z) {
    return std::exp(std::sin(x) * std::cos(y + z));
  });
  const std::vector<double> before(f.phys().begin(), f.phys().end());
  f.mutable_spec();
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(f.phys()[i], before[i], 1e-14);
}

TEST(Torus, RejectsBadShape) {
  EXPECT_THROW(TorusGrid(16, 0), UsageError);
  EXPECT_THROW(TorusGrid(16, 4), UsageError);
}

TEST(Spectral, SineNorms) {
  const TorusGrid g(16, 2);
  const ScalarField f = ScalarField::from_function(g, [](double x, double, double) { return std::sin(x); });
  // Integral of sin^2 over (2 pi)^3 is 4 pi^3.
  EXPECT_NEAR(l2_norm(f), 11.136655993663415691, 1e-12);
  EXPECT_NEAR(sobolev_norm(f, 2.0), 2.0 * 11.136655993663415691, 1e-11);
  EXPECT_NEAR(l2_norm(ScalarField(g, 1.0)), 15.749609945722419744, 1e-12);
  EXPECT_NEAR(integrate(ScalarField(g, 1.0)), 8 * kPi * kPi * kPi, 1e-10);
}

TEST(Spectral, Parseval) {
  const TorusGrid g(32, 2);
  const ScalarField f = ScalarField::from_function(g, [](double x, double y, double) {
    return 1.0 + std::sin(x) * std::cos(2 * y) + 0.3 * std::cos(5 * y);
  });
  double sum = 0.0;
  for (double v : f.phys()) sum += v * v;
  const double quad = sum * TorusGrid::kVolume / static_cast<double>(g.size());
  EXPECT_NEAR(l2_norm(f) * l2_norm(f), quad, 1e-10 * quad);
}

TEST(Spectral, DerivativesOfTrigPolynomials) {
  const TorusGrid g(16, 3);
  const ScalarField f = ScalarField::from_function(g, [](double x, double y, double z) {
    return std::sin(2 * x) * std::cos(y) + std::cos(3 * z);
  });
  const VectorField gf = grad(f);
  const VectorField exact = VectorField::from_function(g, [](double x, double y, double z) {
    return std::array<double, 3>{2 * std::cos(2 * x) * std::cos(y), -std::sin(2 * x) * std::sin(y),
                                 -3 * std::sin(3 * z)};
  });
  EXPECT_LE((gf - exact).max_abs(), 1e-12);
  const ScalarField lap = laplacian(f);
  const ScalarField lap_exact = ScalarField::from_function(g, [](double x, double y, double z) {
    return -5 * std::sin(2 * x) * std::cos(y) - 9 * std::cos(3 * z);
  });
  EXPECT_LE((lap - lap_exact).max_abs(), 1e-11);
}

TEST(Spectral, VectorIdentities) {
  const TorusGrid g(16, 3);
  const VectorField v = smooth_vector(g);
  EXPECT_LE(div(curl(v)).max_abs(), 1e-12);
  EXPECT_LE(curl(grad(v[0])).max_abs(), 1e-12);
  EXPECT_LE((curl_via_B(v) - curl(v)).max_abs(), 1e-13);
  // curl curl = grad div - laplacian
  EXPECT_LE((curl(curl(v)) - (grad(div(v)) - laplacian(v))).max_abs(), 1e-11);
}

TEST(Spectral, MaxwellMatricesAntisymmetric) {
  for (const auto& B : maxwell_matrices())
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) EXPECT_EQ(B[r][c], -B[c][r]);
}

TEST(Spectral, DealiasKeepsLowModesOnly) {
  const TorusGrid g(32, 2);
  const ScalarField low = ScalarField::from_function(g, [](double x, double y, double) {
    return std::sin(10 * x) + std::cos(10 * y);
  });
  const ScalarField high = ScalarField::from_function(g, [](double x, double, double) {
    return std::cos(11 * x);
  });
  EXPECT_LE((dealias(low) - low).max_abs(), 1e-13);
  EXPECT_LE(dealias(high).max_abs(), 1e-13);
}

TEST(Spectral, LerayProjection) {
  const TorusGrid g(16, 3);
  const VectorField v = smooth_vector(g) + grad(ScalarField::from_function(
                                              g, [](double x, double y, double) { return std::cos(x + y); }));
  const VectorField w = leray_project(v);
  EXPECT_LE(div(w).max_abs(), 1e-12);
  EXPECT_LE((leray_project(w) - w).max_abs(), 1e-13);
  EXPECT_LE((curl(w) - curl(v)).max_abs(), 1e-12);
}

TEST(Spectral, InverseLaplacian) {
  const TorusGrid g(16, 2);
  const ScalarField f = ScalarField::from_function(g, [](double x, double y, double) {
    return std::sin(x) * std::cos(2 * y);
  });
  EXPECT_LE((laplacian(inverse_laplacian(f)) - f).max_abs(), 1e-13);
}

// A z-invariant field must look the same on a 2-D grid and on a full 3-D grid.
TEST(Spectral, PlanarAgreesWithZInvariant3D) {
  const TorusGrid g2(16, 2), g3(16, 3);
  auto fn = [](double x, double y, double) {
    return std::array<double, 3>{std::sin(x + y), std::cos(2 * x), std::sin(y) * std::cos(x)};
  };
  const VectorField v2 = VectorField::from_function(g2, fn);
  const VectorField v3 = VectorField::from_function(g3, fn);
  for (double s : {0.0, 1.0, 2.5, 4.0}) EXPECT_NEAR(sobolev_norm(v2, s), sobolev_norm(v3, s), 1e-10);
  EXPECT_NEAR(l2_norm(curl(v2)), l2_norm(curl(v3)), 1e-10);
  EXPECT_NEAR(inner(v2, curl(v2)), inner(v3, curl(v3)), 1e-10);
}

TEST(Spectral, GridMismatchIsRejected) {
  const ScalarField a(TorusGrid(16, 2), 1.0), b(TorusGrid(32, 2), 1.0);
  EXPECT_THROW(a + b, UsageError);
}
