#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dlimit/errors.hpp"
#include "dlimit/eos.hpp"

using namespace dlimit;

TEST(Eos, DensityAtLogTwo) {
  const EosClosure eos;
  const double g = eos.gamma();
  EXPECT_NEAR(eos.density(g * std::log(2.0), 1.0), 0.5, 1e-15);
}

// Reference values from a 30-digit evaluation of the closed forms.
TEST(Eos, ReferenceState) {
  const EosClosure eos(1.4, 1e-8, 1e-8);
  EXPECT_NEAR(eos.density(0.3, 2.0), 1.3242144486594973316, 1e-14);
  EXPECT_NEAR(eos.temperature(0.3, 2.0), 3.7758234741068574221, 1e-14);
  EXPECT_NEAR(eos.coeff_a(0.3, 2.0), 0.35714285714285714286, 1e-15);
  EXPECT_NEAR(eos.coeff_b(0.3, 2.0), 5.0, 1e-14);
  EXPECT_NEAR(eos.sound_speed(0.3, 2.0), 1.4541186834298774515, 1e-14);
}

TEST(Eos, CoefficientsForDefaultGamma) {
  const EosClosure eos;
  EXPECT_NEAR(eos.coeff_a(0.7, 1.0), 0.6, 1e-15);
  EXPECT_NEAR(eos.coeff_a(0.7, 2.4), 0.25, 1e-15);
  EXPECT_NEAR(eos.coeff_b(0.7, 4.0), 6.0, 1e-14);
}

TEST(Eos, RhoThetaIsB) {
  const EosClosure eos;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double S = u(rng), p = u(rng);
    EXPECT_NEAR(eos.density(S, p) * eos.temperature(S, p), eos.coeff_b(S, p),
                1e-13 * eos.coeff_b(S, p));
  }
}

TEST(Eos, GibbsResidualSmallAndSecondOrder) {
  const EosClosure eos;
  EXPECT_LE(eos.gibbs_residual(0.2, 1.5, 1e-4), 1e-7);
  const double r1 = eos.gibbs_residual(0.2, 1.5, 2e-3);
  const double r2 = eos.gibbs_residual(0.2, 1.5, 1e-3);
  EXPECT_NEAR(r1 / r2, 4.0, 0.4);
  EXPECT_EQ(eos.gibbs_residual_along(0.2, 1.5, 0.0, 0.0), 0.0);
}

TEST(Eos, RejectsBadInput) {
  EXPECT_THROW(EosClosure(1.0, 1e-8, 1e-8), UsageError);
  EXPECT_THROW(EosClosure(1.4, 0.0, 1e-8), UsageError);
  const EosClosure eos;
  EXPECT_THROW(eos.density(0.1, 0.0), DomainError);
  EXPECT_THROW(eos.density(0.1, -1.0), DomainError);
  EXPECT_THROW(eos.gibbs_residual(0.1, 1.0, 0.0), UsageError);
}
