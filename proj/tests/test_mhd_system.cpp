#include <gtest/gtest.h>

#include <cmath>

#include "dlimit/errors.hpp"
#include "dlimit/initial_data.hpp"
#include "dlimit/mhd_system.hpp"
#include "dlimit/mms.hpp"
#include "dlimit/spectral.hpp"

using namespace dlimit;

TEST(MhdSystem, PressureWaveRates) {
  const TorusGrid g(32, 2);
  const EosClosure eos;
  MhdState s(g);
  s.p = ScalarField::from_function(g, [](double x, double, double) { return 1.0 + 0.1 * std::sin(x); });
  s.S = ScalarField(g, 0.5);
  s.H[2] = ScalarField(g, 1.0);
  const MhdRates r = mhd_full_rhs(s, eos);
  const ScalarField expect = ScalarField::from_function(g, [&](double x, double, double) {
    return -0.1 * std::cos(x) / eos.density(0.5, 1.0 + 0.1 * std::sin(x));
  });
  EXPECT_LE((r.du[0] - expect).max_abs(), 1e-10);
  EXPECT_LE(r.dp.max_abs() + r.dS.max_abs() + r.dH.max_abs(), 1e-14);
}

TEST(MhdSystem, JouleHeatingOfShearedField) {
  // H = (0, sin x, 0): curl H = (0, 0, cos x), Lorentz force (curl H x H) = (-sin x cos x, 0, 0).
  const TorusGrid g(32, 2);
  const EosClosure eos;
  MhdState s(g);
  s.p = ScalarField(g, 1.0);
  s.S = ScalarField(g, 0.5);
  s.H[1] = ScalarField::from_function(g, [](double x, double, double) { return std::sin(x); });
  const MhdRates r = mhd_full_rhs(s, eos);
  const double rho = eos.density(0.5, 1.0), b = eos.coeff_b(0.5, 1.0);
  const ScalarField heat = ScalarField::from_function(g, [&](double x, double, double) {
    return std::cos(x) * std::cos(x) / b;
  });
  const ScalarField force = ScalarField::from_function(g, [&](double x, double, double) {
    return -std::sin(x) * std::cos(x) / rho;
  });
  EXPECT_LE((r.dS - heat).max_abs(), 1e-13);
  EXPECT_LE((r.du[0] - force).max_abs(), 1e-13);
  EXPECT_LE((r.dH[1] + s.H[1]).max_abs(), 1e-13);
}

TEST(MhdSystem, DiffusionIsExactPerMode) {
  const TorusGrid g(16, 2);
  const VectorField H = VectorField::from_function(g, [](double x, double y, double) {
    return std::array<double, 3>{0.0, std::sin(2 * x), std::cos(x + y)};
  });
  const double dt = 0.3;
  const VectorField out = magnetic_diffusion_exact(H, dt);
  const VectorField expect = VectorField::from_function(g, [&](double x, double y, double) {
    return std::array<double, 3>{0.0, std::exp(-4 * dt) * std::sin(2 * x),
                                 std::exp(-2 * dt) * std::cos(x + y)};
  });
  EXPECT_LE((out - expect).max_abs(), 1e-14);
}

TEST(MhdSystem, InducedField) {
  const TorusGrid g(16, 2);
  VectorField u(g), H(g);
  u[0] = ScalarField(g, 0.5);
  H[2] = ScalarField(g, 2.0);
  H[1] = ScalarField::from_function(g, [](double x, double, double) { return std::sin(x); });
  // curl H = (0, 0, cos x); u x H = (0, -1, 0.5 sin x).
  const VectorField E = induced_E(u, H);
  const VectorField expect = VectorField::from_function(g, [](double x, double, double) {
    return std::array<double, 3>{0.0, 1.0, std::cos(x) - 0.5 * std::sin(x)};
  });
  EXPECT_LE((E - expect).max_abs(), 1e-14);
}

TEST(MhdSystem, WaveSpeed) {
  const TorusGrid g(16, 2);
  MhdState s(g);
  s.p = ScalarField(g, 1.0);
  s.S = ScalarField(g, 0.0);
  s.u[1] = ScalarField(g, 0.25);
  s.H[2] = ScalarField(g, 1.0);
  EXPECT_NEAR(mhd_wave_speed(s, EosClosure{}), 0.25 + std::sqrt(5.0 / 3.0 + 1.0), 1e-14);
}

TEST(MhdSystem, KeepsHSolenoidal) {
  const MhdState b = default_background_ic(TorusGrid(32, 2), EosClosure{}, 0.1);
  EXPECT_LE(div(b.H).max_abs(), 1e-13);
  MhdRunConfig rc;
  rc.dt = 0.01;
  MhdSolver solver(rc);
  const MhdState out = solver.advance(b, 0.1);
  EXPECT_NEAR(out.t, 0.1, 1e-14);
  EXPECT_LE(div(out.H).max_abs(), 1e-12);
}

TEST(MhdSystem, StrangSplittingIsSecondOrder) {
  MmsConfig mc;
  const double e1 = mms_mhd_error(mc, 32, 16, false);
  const double e2 = mms_mhd_error(mc, 32, 32, false);
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.2);
}

TEST(MhdSystem, RejectsBadConfig) {
  MhdRunConfig rc;
  rc.dt = -1.0;
  EXPECT_THROW(MhdSolver{rc}, UsageError);
  rc.dt = 0.1;
  rc.cfl = 2.0;
  EXPECT_THROW(MhdSolver{rc}, UsageError);
}
