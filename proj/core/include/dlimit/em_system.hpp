#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "dlimit/diagnostics.hpp"
#include "dlimit/eos.hpp"
#include "dlimit/exponential.hpp"
#include "dlimit/fields.hpp"

namespace dlimit {

/// Euler-Maxwell unknowns: pressure, velocity, entropy, electric and magnetic field.
struct EmState {
  ScalarField p;
  VectorField u;
  ScalarField S;
  VectorField E;
  VectorField H;
  double t = 0.0;

  explicit EmState(const TorusGrid& g)
      : p(g), u(g), S(g), E(g), H(g) {}
  EmState(ScalarField p_, VectorField u_, ScalarField S_, VectorField E_, VectorField H_,
          double t_ = 0.0)
      : p(std::move(p_)), u(std::move(u_)), S(std::move(S_)), E(std::move(E_)),
        H(std::move(H_)), t(t_) {}

  const TorusGrid& grid() const { return p.grid(); }
};

/// Time derivatives of all five unknowns; also used for forcing terms.
struct EmRates {
  ScalarField dp;
  VectorField du;
  ScalarField dS;
  VectorField dE;
  VectorField dH;

  explicit EmRates(const TorusGrid& g) : dp(g), du(g), dS(g), dE(g), dH(g) {}
};

/// Transport right-hand side (everything except the E equation).
struct EmTransportRates {
  ScalarField dp;
  VectorField du;
  ScalarField dS;
  VectorField dH;
};

/// Additive source in every equation, evaluated at time t.
using EmForcing = std::function<EmRates(double t)>;

enum class EmScheme {
  /// Krogstad exponential RK4 with the Maxwell-damping operator solved exactly.
  exponential,
  /// Half exact E relaxation, SSP-RK3 transport with E frozen, half relaxation.
  strang,
  /// Fully explicit SSP-RK3 on the whole system; needs dt << eps.
  explicit_rk3,
};

struct EmRunConfig {
  double epsilon = 0.1;
  double dt = 1e-2;
  double t_final = 0.5;
  double cfl = 0.4;
  EosClosure eos;
  EmScheme scheme = EmScheme::exponential;
  /// Reproject H onto divergence-free fields after every step.
  bool project_H = true;
  /// Subdivide steps that violate the CFL bound instead of proceeding.
  bool cfl_guard = true;
};

struct WaveSpeeds {
  double acoustic = 0.0;      ///< max |u| + c_s
  double magnetosonic = 0.0;  ///< max |u| + sqrt(c_s^2 + |H|^2 / rho)
  double maxwell = 0.0;       ///< 1 / sqrt(eps), diagnostic only
};

/// dp = -u.grad p - div u / a, du = -u.grad u - grad p / r + ((E + u x H) x H) / r,
/// dS = |E + u x H|^2 / b - u.grad S, dH = -curl E. Products are dealiased.
EmTransportRates em_transport_rhs(const EmState& s, const EosClosure& eos);

/// Full time derivative including dE = (curl H - E - u x H) / eps.
EmRates em_full_rhs(const EmState& s, const EosClosure& eos, double epsilon);

/// Target of the E relaxation with (u, H) frozen: curl H - u x H.
VectorField relaxation_target(const VectorField& u, const VectorField& H);

/// E <- E* + exp(-dt/eps) (E - E*), exact for frozen (u, H).
EmState stiff_E_update(const EmState& s, double dt, double epsilon);

WaveSpeeds em_wave_speed(const EmState& s, const EosClosure& eos, double epsilon);

/// Stateful stepper; caches the exponential tables for the current step size.
class EmSolver {
 public:
  explicit EmSolver(EmRunConfig cfg, MetricsSink* sink = nullptr);

  const EmRunConfig& config() const noexcept { return cfg_; }
  void set_forcing(EmForcing f) { forcing_ = std::move(f); }

  /// Advance by config().dt (possibly in CFL-guarded substeps).
  EmState step(const EmState& s);
  /// Advance to t_end with steps of config().dt; the last step is shortened.
  EmState advance(EmState s, double t_end);

 private:
  EmState advance_by(const EmState& s, double h);
  EmState single_step(const EmState& s, double h);
  EmState step_exponential(const EmState& s, double h);
  EmState step_strang(const EmState& s, double h);
  EmState step_explicit(const EmState& s, double h);
  const MaxwellDampingPropagator& propagator(const TorusGrid& grid, double h);

  EmRunConfig cfg_;
  MetricsSink* sink_;
  EmForcing forcing_;
  std::map<double, std::unique_ptr<MaxwellDampingPropagator>> props_;
};

/// One step with a throwaway solver.
EmState em_step(const EmState& s, const EmRunConfig& cfg);

}  // namespace dlimit
