#include "dlimit/em_system.hpp"

#include <cmath>
#include <sstream>

#include "dlimit/errors.hpp"
#include "dlimit/spectral.hpp"
#include "fluid.hpp"

namespace dlimit {

namespace {

// All five unknowns as one linear-algebra object for the integrators.
struct Bundle {
  ScalarField p;
  VectorField u;
  ScalarField S;
  VectorField E;
  VectorField H;

  static Bundle of(const EmState& s) { return {s.p, s.u, s.S, s.E, s.H}; }
  static Bundle of(EmRates r) {
    return {std::move(r.dp), std::move(r.du), std::move(r.dS), std::move(r.dE), std::move(r.dH)};
  }
  EmState state(double t) const { return EmState(p, u, S, E, H, t); }

  Bundle& axpy(double a, const Bundle& o) {
    p.axpy(a, o.p);
    u.axpy(a, o.u);
    S.axpy(a, o.S);
    E.axpy(a, o.E);
    H.axpy(a, o.H);
    return *this;
  }
  Bundle& scale(double a) {
    p *= a;
    u *= a;
    S *= a;
    E *= a;
    H *= a;
    return *this;
  }
};

Bundle lincomb(double a, const Bundle& x, double b, const Bundle& y) {
  Bundle out = x;
  out.scale(a);
  out.axpy(b, y);
  return out;
}

constexpr std::array<double, 4> kInvFactorial{1.0, 1.0, 0.5, 1.0 / 6.0};

// phi_j(c h L) applied to a bundle; the fluid block has L = 0.
Bundle apply_phi(const MaxwellDampingPropagator& prop, int j, bool half, Bundle x) {
  x.p *= kInvFactorial[j];
  x.u *= kInvFactorial[j];
  x.S *= kInvFactorial[j];
  prop.apply(j, half, x.E, x.H);
  return x;
}

void add_forcing(EmRates& r, const EmForcing& forcing, double t) {
  if (!forcing) return;
  EmRates f = forcing(t);
  r.dp += f.dp;
  r.du += f.du;
  r.dS += f.dS;
  r.dE += f.dE;
  r.dH += f.dH;
}

// Nonlinear remainder for the exponential integrator: everything except
// eps dE/dt = curl H - E and dH/dt = -curl E.
EmRates exponential_remainder(const EmState& s, const EosClosure& eos, double epsilon,
                              const EmForcing& forcing, double t) {
  const TorusGrid& g = s.grid();
  const VectorField uxH = dealias(cross(s.u, s.H));
  const VectorField J = s.E + uxH;
  const VectorField lorentz = dealias(cross(J, s.H));
  const ScalarField heating = dealias(dot(J, J));
  auto fluid = detail::fluid_rates(s.p, s.u, s.S, lorentz, heating, eos);
  EmRates r(g);
  r.dp = std::move(fluid.dp);
  r.du = std::move(fluid.du);
  r.dS = std::move(fluid.dS);
  r.dE = (-1.0 / epsilon) * uxH;
  add_forcing(r, forcing, t);
  return r;
}

}  // namespace

EmTransportRates em_transport_rhs(const EmState& s, const EosClosure& eos) {
  const VectorField uxH = dealias(cross(s.u, s.H));
  const VectorField J = s.E + uxH;
  const VectorField lorentz = dealias(cross(J, s.H));
  const ScalarField heating = dealias(dot(J, J));
  auto fluid = detail::fluid_rates(s.p, s.u, s.S, lorentz, heating, eos);
  return {std::move(fluid.dp), std::move(fluid.du), std::move(fluid.dS), -curl(s.E)};
}

EmRates em_full_rhs(const EmState& s, const EosClosure& eos, double epsilon) {
  if (!(epsilon > 0.0)) throw UsageError("em_full_rhs: epsilon must be positive");
  auto tr = em_transport_rhs(s, eos);
  EmRates r(s.grid());
  r.dp = std::move(tr.dp);
  r.du = std::move(tr.du);
  r.dS = std::move(tr.dS);
  r.dH = std::move(tr.dH);
  r.dE = (1.0 / epsilon) * (relaxation_target(s.u, s.H) - s.E);
  return r;
}

VectorField relaxation_target(const VectorField& u, const VectorField& H) {
  return curl(H) - dealias(cross(u, H));
}

EmState stiff_E_update(const EmState& s, double dt, double epsilon) {
  if (!(epsilon > 0.0)) throw UsageError("stiff_E_update: epsilon must be positive");
  const VectorField target = relaxation_target(s.u, s.H);
  EmState out = s;
  const double decay = std::exp(-dt / epsilon);
  out.E = target + decay * (s.E - target);
  return out;
}

WaveSpeeds em_wave_speed(const EmState& s, const EosClosure& eos, double epsilon) {
  WaveSpeeds w;
  auto pp = s.p.phys();
  auto ps = s.S.phys();
  std::array<std::span<const double>, 3> pu{s.u[0].phys(), s.u[1].phys(), s.u[2].phys()};
  std::array<std::span<const double>, 3> ph{s.H[0].phys(), s.H[1].phys(), s.H[2].phys()};
  for (std::size_t i = 0; i < pp.size(); ++i) {
    const double speed = std::sqrt(pu[0][i] * pu[0][i] + pu[1][i] * pu[1][i] + pu[2][i] * pu[2][i]);
    const double h2 = ph[0][i] * ph[0][i] + ph[1][i] * ph[1][i] + ph[2][i] * ph[2][i];
    const double rho = eos.density(ps[i], pp[i]);
    const double cs2 = eos.gamma() * pp[i] / rho;
    w.acoustic = std::max(w.acoustic, speed + std::sqrt(cs2));
    w.magnetosonic = std::max(w.magnetosonic, speed + std::sqrt(cs2 + h2 / rho));
  }
  w.maxwell = 1.0 / std::sqrt(epsilon);
  return w;
}

EmSolver::EmSolver(EmRunConfig cfg, MetricsSink* sink) : cfg_(std::move(cfg)), sink_(sink) {
  if (!(cfg_.epsilon > 0.0)) throw UsageError("EmRunConfig: epsilon must be positive");
  if (!(cfg_.dt > 0.0)) throw UsageError("EmRunConfig: dt must be positive");
  if (!(cfg_.cfl > 0.0 && cfg_.cfl <= 1.0)) throw UsageError("EmRunConfig: cfl must lie in (0, 1]");
}

const MaxwellDampingPropagator& EmSolver::propagator(const TorusGrid& grid, double h) {
  auto it = props_.find(h);
  if (it != props_.end() && !(it->second->grid() == grid)) {
    props_.erase(it);
    it = props_.end();
  }
  if (it == props_.end()) {
    // Sweeps use one or two distinct step sizes; keep the cache small.
    if (props_.size() > 8) props_.clear();
    it = props_.emplace(h, std::make_unique<MaxwellDampingPropagator>(grid, cfg_.epsilon, h)).first;
  }
  return *it->second;
}

EmState EmSolver::step_exponential(const EmState& s, double h) {
  const auto& prop = propagator(s.grid(), h);
  const double t = s.t;
  const EosClosure& eos = cfg_.eos;
  const double eps = cfg_.epsilon;

  const Bundle x0 = Bundle::of(s);
  const Bundle n0 = Bundle::of(exponential_remainder(s, eos, eps, forcing_, t));

  const Bundle e_half = apply_phi(prop, 0, true, x0);
  const Bundle phi1_half_n0 = apply_phi(prop, 1, true, n0);

  Bundle a = e_half;
  a.axpy(0.5 * h, phi1_half_n0);
  const Bundle na = Bundle::of(exponential_remainder(a.state(t + 0.5 * h), eos, eps, forcing_, t + 0.5 * h));

  Bundle b = a;
  b.axpy(h, apply_phi(prop, 2, true, lincomb(1.0, na, -1.0, n0)));
  const Bundle nb = Bundle::of(exponential_remainder(b.state(t + 0.5 * h), eos, eps, forcing_, t + 0.5 * h));

  const Bundle e_full = apply_phi(prop, 0, false, x0);
  const Bundle phi1_n0 = apply_phi(prop, 1, false, n0);
  Bundle c = e_full;
  c.axpy(h, phi1_n0);
  c.axpy(2.0 * h, apply_phi(prop, 2, false, lincomb(1.0, nb, -1.0, n0)));
  const Bundle nc = Bundle::of(exponential_remainder(c.state(t + h), eos, eps, forcing_, t + h));

  // b1 = phi1 - 3 phi2 + 4 phi3, b2 = b3 = 2 phi2 - 4 phi3, b4 = 4 phi3 - phi2.
  const Bundle nab = lincomb(1.0, na, 1.0, nb);
  const Bundle phi2_arg = lincomb(-3.0, n0, 2.0, nab).axpy(-1.0, nc);
  const Bundle phi3_arg = lincomb(4.0, n0, -4.0, nab).axpy(4.0, nc);

  Bundle x1 = e_full;
  x1.axpy(h, phi1_n0);
  x1.axpy(h, apply_phi(prop, 2, false, phi2_arg));
  x1.axpy(h, apply_phi(prop, 3, false, phi3_arg));
  return x1.state(t + h);
}

EmState EmSolver::step_strang(const EmState& s, double h) {
  const double eps = cfg_.epsilon;
  const EosClosure& eos = cfg_.eos;

  // Transport stage: (p, u, S, H) with E frozen; E only sees the forcing.
  auto rates = [&](const EmState& y, double t) {
    auto tr = em_transport_rhs(y, eos);
    EmRates r(y.grid());
    r.dp = std::move(tr.dp);
    r.du = std::move(tr.du);
    r.dS = std::move(tr.dS);
    r.dH = std::move(tr.dH);
    add_forcing(r, forcing_, t);
    return Bundle::of(std::move(r));
  };

  const EmState y0 = stiff_E_update(s, 0.5 * h, eps);
  const double t = s.t;
  const Bundle b0 = Bundle::of(y0);
  Bundle b1 = b0;
  b1.axpy(h, rates(y0, t));
  Bundle b2 = b1;
  b2.axpy(h, rates(b1.state(t + h), t + h));
  b2 = lincomb(0.75, b0, 0.25, b2);
  Bundle b3 = b2;
  b3.axpy(h, rates(b2.state(t + 0.5 * h), t + 0.5 * h));
  b3 = lincomb(1.0 / 3.0, b0, 2.0 / 3.0, b3);

  return stiff_E_update(b3.state(t + h), 0.5 * h, eps);
}

EmState EmSolver::step_explicit(const EmState& s, double h) {
  auto rates = [&](const EmState& y, double t) {
    EmRates r = em_full_rhs(y, cfg_.eos, cfg_.epsilon);
    add_forcing(r, forcing_, t);
    return Bundle::of(std::move(r));
  };
  const double t = s.t;
  const Bundle b0 = Bundle::of(s);
  Bundle b1 = b0;
  b1.axpy(h, rates(s, t));
  Bundle b2 = b1;
  b2.axpy(h, rates(b1.state(t + h), t + h));
  b2 = lincomb(0.75, b0, 0.25, b2);
  Bundle b3 = b2;
  b3.axpy(h, rates(b2.state(t + 0.5 * h), t + 0.5 * h));
  b3 = lincomb(1.0 / 3.0, b0, 2.0 / 3.0, b3);
  return b3.state(t + h);
}

EmState EmSolver::single_step(const EmState& s, double h) {
  EmState out = [&] {
    switch (cfg_.scheme) {
      case EmScheme::strang:
        return step_strang(s, h);
      case EmScheme::explicit_rk3:
        return step_explicit(s, h);
      case EmScheme::exponential:
      default:
        return step_exponential(s, h);
    }
  }();
  if (cfg_.project_H) out.H = leray_project(out.H);
  return out;
}

EmState EmSolver::step(const EmState& s) { return advance_by(s, cfg_.dt); }

EmState EmSolver::advance_by(const EmState& s, double h) {
  int substeps = 1;
  const WaveSpeeds speeds = em_wave_speed(s, cfg_.eos, cfg_.epsilon);
  if (cfg_.cfl_guard) {
    const double allowed = cfg_.cfl * s.grid().spacing() / speeds.magnetosonic;
    while (h / substeps > allowed * (1.0 + 1e-12)) substeps *= 2;
    if (substeps > 1 && sink_ != nullptr) {
      std::ostringstream os;
      os << "EM step at t=" << s.t << ": dt=" << h << " exceeds CFL bound " << allowed
         << "; using " << substeps << " substeps";
      sink_->warn(os.str());
    }
  }
  EmState cur = s;
  const double sub = h / substeps;
  for (int i = 0; i < substeps; ++i) {
    const double t_next = s.t + (i + 1) * sub;
    cur = single_step(cur, sub);
    cur.t = t_next;
    check_positivity(cur.p, cur.S, cfg_.eos, cur.t);
  }
  if (sink_ != nullptr) {
    StepDiagnostics d;
    d.t = cur.t;
    d.dt = h;
    d.min_p = cur.p.min();
    d.min_S = cur.S.min();
    d.div_H = div(cur.H).max_abs();
    d.max_speed = speeds.magnetosonic;
    d.maxwell_speed = speeds.maxwell;
    d.substeps = substeps;
    sink_->record(d);
  }
  return cur;
}

EmState EmSolver::advance(EmState s, double t_end) {
  const double dt = cfg_.dt;
  while (s.t < t_end - 1e-12 * std::max(1.0, std::abs(t_end))) {
    const double h = std::min(dt, t_end - s.t);
    s = advance_by(s, h);
  }
  return s;
}

EmState em_step(const EmState& s, const EmRunConfig& cfg) {
  EmSolver solver(cfg);
  return solver.step(s);
}

}  // namespace dlimit
