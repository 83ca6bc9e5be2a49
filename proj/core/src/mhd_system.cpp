#include "dlimit/mhd_system.hpp"

#include <cmath>
#include <sstream>

#include "dlimit/errors.hpp"
#include "dlimit/spectral.hpp"
#include "fluid.hpp"

namespace dlimit {

namespace {

MhdRates& axpy(MhdRates& y, double a, const MhdRates& x) {
  y.dp.axpy(a, x.dp);
  y.du.axpy(a, x.du);
  y.dS.axpy(a, x.dS);
  y.dH.axpy(a, x.dH);
  return y;
}

MhdState& axpy(MhdState& y, double a, const MhdRates& x) {
  y.p.axpy(a, x.dp);
  y.u.axpy(a, x.du);
  y.S.axpy(a, x.dS);
  y.H.axpy(a, x.dH);
  return y;
}

MhdState lincomb(double a, const MhdState& x, double b, const MhdState& y) {
  MhdState out = x;
  out.p *= a;
  out.u *= a;
  out.S *= a;
  out.H *= a;
  out.p.axpy(b, y.p);
  out.u.axpy(b, y.u);
  out.S.axpy(b, y.S);
  out.H.axpy(b, y.H);
  return out;
}

}  // namespace

MhdRates mhd_transport_rhs(const MhdState& s, const EosClosure& eos) {
  const VectorField j = curl(s.H);
  const VectorField lorentz = dealias(cross(j, s.H));
  const ScalarField heating = dealias(dot(j, j));
  auto fluid = detail::fluid_rates(s.p, s.u, s.S, lorentz, heating, eos);
  return MhdRates(std::move(fluid.dp), std::move(fluid.du), std::move(fluid.dS),
                  curl(dealias(cross(s.u, s.H))));
}

MhdRates mhd_full_rhs(const MhdState& s, const EosClosure& eos) {
  MhdRates r = mhd_transport_rhs(s, eos);
  r.dH += laplacian(s.H);
  return r;
}

VectorField magnetic_diffusion_exact(const VectorField& H, double dt) {
  return apply_radial_multiplier(H, [dt](double k2) { return std::exp(-k2 * dt); });
}

VectorField induced_E(const VectorField& u, const VectorField& H) {
  return curl(H) - dealias(cross(u, H));
}

double mhd_wave_speed(const MhdState& s, const EosClosure& eos) {
  double w = 0.0;
  auto pp = s.p.phys();
  auto ps = s.S.phys();
  std::array<std::span<const double>, 3> pu{s.u[0].phys(), s.u[1].phys(), s.u[2].phys()};
  std::array<std::span<const double>, 3> ph{s.H[0].phys(), s.H[1].phys(), s.H[2].phys()};
  for (std::size_t i = 0; i < pp.size(); ++i) {
    const double speed = std::sqrt(pu[0][i] * pu[0][i] + pu[1][i] * pu[1][i] + pu[2][i] * pu[2][i]);
    const double h2 = ph[0][i] * ph[0][i] + ph[1][i] * ph[1][i] + ph[2][i] * ph[2][i];
    const double rho = eos.density(ps[i], pp[i]);
    w = std::max(w, speed + std::sqrt(eos.gamma() * pp[i] / rho + h2 / rho));
  }
  return w;
}

MhdSolver::MhdSolver(MhdRunConfig cfg, MetricsSink* sink) : cfg_(std::move(cfg)), sink_(sink) {
  if (!(cfg_.dt > 0.0)) throw UsageError("MhdRunConfig: dt must be positive");
  if (!(cfg_.cfl > 0.0 && cfg_.cfl <= 1.0)) throw UsageError("MhdRunConfig: cfl must lie in (0, 1]");
}

MhdState MhdSolver::single_step(const MhdState& s, double h) {
  const EosClosure& eos = cfg_.eos;
  auto rates = [&](const MhdState& y, double t) {
    MhdRates r = mhd_transport_rhs(y, eos);
    if (forcing_) axpy(r, 1.0, forcing_(t));
    return r;
  };

  const double t = s.t;
  MhdState y0 = s;
  y0.H = magnetic_diffusion_exact(s.H, 0.5 * h);

  MhdState y1 = y0;
  axpy(y1, h, rates(y0, t));
  MhdState y2 = y1;
  axpy(y2, h, rates(y1, t + h));
  y2 = lincomb(0.75, y0, 0.25, y2);
  MhdState y3 = y2;
  axpy(y3, h, rates(y2, t + 0.5 * h));
  y3 = lincomb(1.0 / 3.0, y0, 2.0 / 3.0, y3);

  y3.H = magnetic_diffusion_exact(y3.H, 0.5 * h);
  if (cfg_.project_H) y3.H = leray_project(y3.H);
  y3.t = t + h;
  return y3;
}

MhdState MhdSolver::step(const MhdState& s) {
  const double h = cfg_.dt;
  int substeps = 1;
  const double speed = mhd_wave_speed(s, cfg_.eos);
  if (cfg_.cfl_guard) {
    const double allowed = cfg_.cfl * s.grid().spacing() / speed;
    while (h / substeps > allowed * (1.0 + 1e-12)) substeps *= 2;
    if (substeps > 1 && sink_ != nullptr) {
      std::ostringstream os;
      os << "MHD step at t=" << s.t << ": dt=" << h << " exceeds CFL bound " << allowed
         << "; using " << substeps << " substeps";
      sink_->warn(os.str());
    }
  }
  MhdState cur = s;
  const double sub = h / substeps;
  for (int i = 0; i < substeps; ++i) {
    cur = single_step(cur, sub);
    cur.t = s.t + (i + 1) * sub;
    check_positivity(cur.p, cur.S, cfg_.eos, cur.t);
  }
  if (sink_ != nullptr) {
    StepDiagnostics d;
    d.t = cur.t;
    d.dt = h;
    d.min_p = cur.p.min();
    d.min_S = cur.S.min();
    d.div_H = div(cur.H).max_abs();
    d.max_speed = speed;
    d.substeps = substeps;
    sink_->record(d);
  }
  return cur;
}

MhdState MhdSolver::advance(MhdState s, double t_end) {
  const double dt = cfg_.dt;
  while (s.t < t_end - 1e-12 * std::max(1.0, std::abs(t_end))) {
    if (t_end - s.t < dt) {
      MhdRunConfig last = cfg_;
      last.dt = t_end - s.t;
      MhdSolver tail(last, sink_);
      tail.set_forcing(forcing_);
      return tail.step(s);
    }
    s = step(s);
  }
  return s;
}

MhdState mhd_step(const MhdState& s, const MhdRunConfig& cfg) {
  MhdSolver solver(cfg);
  return solver.step(s);
}

}  // namespace dlimit
