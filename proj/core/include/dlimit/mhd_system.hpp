#pragma once

#include <functional>

#include "dlimit/diagnostics.hpp"
#include "dlimit/eos.hpp"
#include "dlimit/fields.hpp"

namespace dlimit {

/// Unknowns of the resistive compressible MHD limit system.
struct MhdState {
  ScalarField p;
  VectorField u;
  ScalarField S;
  VectorField H;
  double t = 0.0;

  explicit MhdState(const TorusGrid& g) : p(g), u(g), S(g), H(g) {}
  MhdState(ScalarField p_, VectorField u_, ScalarField S_, VectorField H_, double t_ = 0.0)
      : p(std::move(p_)), u(std::move(u_)), S(std::move(S_)), H(std::move(H_)), t(t_) {}

  const TorusGrid& grid() const { return p.grid(); }
};

/// dp, du, dS and the advective part curl(u x H) of dH.
struct MhdRates {
  ScalarField dp;
  VectorField du;
  ScalarField dS;
  VectorField dH;

  explicit MhdRates(const TorusGrid& g) : dp(g), du(g), dS(g), dH(g) {}
  MhdRates(ScalarField a, VectorField b, ScalarField c, VectorField d)
      : dp(std::move(a)), du(std::move(b)), dS(std::move(c)), dH(std::move(d)) {}
};

using MhdForcing = std::function<MhdRates(double t)>;

struct MhdRunConfig {
  double dt = 5e-3;
  double cfl = 0.4;
  EosClosure eos;
  bool project_H = true;
  bool cfl_guard = true;
};

/// dp = -u.grad p - div u / a, du = -u.grad u - grad p / r + (curl H x H) / r,
/// dS = |curl H|^2 / b - u.grad S, dH_adv = curl(u x H). Products dealiased.
MhdRates mhd_transport_rhs(const MhdState& s, const EosClosure& eos);

/// Complete time derivatives, dH = curl(u x H) + laplacian H.
MhdRates mhd_full_rhs(const MhdState& s, const EosClosure& eos);

/// H <- exp(dt laplacian) H, exact per mode.
VectorField magnetic_diffusion_exact(const VectorField& H, double dt);

/// Induced electric field curl H - u x H.
VectorField induced_E(const VectorField& u, const VectorField& H);

/// max |u| + sqrt(c_s^2 + |H|^2 / rho).
double mhd_wave_speed(const MhdState& s, const EosClosure& eos);

class MhdSolver {
 public:
  explicit MhdSolver(MhdRunConfig cfg, MetricsSink* sink = nullptr);

  const MhdRunConfig& config() const noexcept { return cfg_; }
  void set_forcing(MhdForcing f) { forcing_ = std::move(f); }

  MhdState step(const MhdState& s);
  MhdState advance(MhdState s, double t_end);

 private:
  MhdState single_step(const MhdState& s, double h);

  MhdRunConfig cfg_;
  MetricsSink* sink_;
  MhdForcing forcing_;
};

MhdState mhd_step(const MhdState& s, const MhdRunConfig& cfg);

}  // namespace dlimit
