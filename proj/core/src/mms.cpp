#include "dlimit/mms.hpp"

#include <cmath>
#include <numbers>

#include "dlimit/errors.hpp"
#include "dlimit/rate_fit.hpp"

namespace dlimit {

namespace {

using Vec3 = std::array<double, 3>;

struct Wave {
  double amp;
  int kx, ky;
  double phase, omega, tphase;
};

struct Eval {
  double v = 0.0, dt = 0.0, lap = 0.0;
  Vec3 g{};
};

struct Field {
  double base = 0.0;
  std::vector<Wave> waves;

  Eval at(double x, double y, double t, bool steady) const {
    Eval e;
    e.v = base;
    for (const auto& w : waves) {
      const double th = w.kx * x + w.ky * y + w.phase;
      const double T = steady ? std::cos(w.tphase) : std::cos(w.omega * t + w.tphase);
      const double dT = steady ? 0.0 : -w.omega * std::sin(w.omega * t + w.tphase);
      const double s = std::sin(th), c = std::cos(th);
      e.v += w.amp * s * T;
      e.dt += w.amp * s * dT;
      e.g[0] += w.amp * w.kx * c * T;
      e.g[1] += w.amp * w.ky * c * T;
      e.lap -= w.amp * (w.kx * w.kx + w.ky * w.ky) * s * T;
    }
    return e;
  }
};

struct Fields {
  Field p, S;
  std::array<Field, 3> u, E, H;
};

Fields make_fields(double A) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  Fields f;
  f.p = {1.0, {{A, 1, 0, 0.3, 1.0, 0.2}, {0.5 * A, 1, 1, 1.1, 2.0, 0.0}}};
  f.S = {1.0, {{A, 0, 1, 0.7, 1.5, 0.4}, {0.5 * A, 1, -1, 0.2, 1.0, 1.0}}};
  f.u[0] = {0.0, {{A, 0, 1, 0.1, 1.0, 0.0}, {0.5 * A, 1, 1, 0.5, 2.0, 0.3}}};
  f.u[1] = {0.0, {{A, 1, 0, 0.9, 1.3, 0.5}}};
  f.u[2] = {0.0, {{A, 1, 1, 0.4, 0.7, 0.1}}};
  f.E[0] = {0.0, {{A, 1, 0, 0.2, 1.0, 0.0}}};
  f.E[1] = {0.0, {{A, 0, 1, 1.3, 1.7, 0.6}}};
  f.E[2] = {0.0, {{A, 1, -1, 0.8, 1.1, 0.2}}};
  // Stream function psi gives H1 = d psi/dy, H2 = -d psi/dx.
  const std::vector<Wave> psi{{A, 1, 1, 0.6, 1.2, 0.3}, {0.5 * A, 1, 0, 0.1, 0.9, 0.0},
                              {0.5 * A, 0, 1, 1.4, 1.6, 0.7}};
  for (const auto& w : psi) {
    if (w.ky != 0) f.H[0].waves.push_back({w.amp * w.ky, w.kx, w.ky, w.phase + half_pi, w.omega, w.tphase});
    if (w.kx != 0) f.H[1].waves.push_back({-w.amp * w.kx, w.kx, w.ky, w.phase + half_pi, w.omega, w.tphase});
  }
  f.H[2] = {1.0, {{A, 1, 0, 0.5, 0.8, 0.9}}};
  return f;
}

struct Point {
  Eval p, S;
  std::array<Eval, 3> u, E, H;
};

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 values(const std::array<Eval, 3>& v) { return {v[0].v, v[1].v, v[2].v}; }
Vec3 curl3(const std::array<Eval, 3>& v) {
  return {v[2].g[1] - v[1].g[2], v[0].g[2] - v[2].g[0], v[1].g[0] - v[0].g[1]};
}
double div3(const std::array<Eval, 3>& v) { return v[0].g[0] + v[1].g[1] + v[2].g[2]; }

// Fluid part shared by both systems, given the current density J.
void fluid_defect(const Point& q, const Vec3& J, const EosClosure& eos, double& fp, Vec3& fu,
                  double& fS) {
  const Vec3 u = values(q.u);
  const Vec3 H = values(q.H);
  const double a = eos.coeff_a(q.S.v, q.p.v);
  const double r = eos.density(q.S.v, q.p.v);
  const double b = eos.coeff_b(q.S.v, q.p.v);
  fp = q.p.dt - (-dot3(u, q.p.g) - div3(q.u) / a);
  const Vec3 JxH = cross3(J, H);
  for (int i = 0; i < 3; ++i)
    fu[i] = q.u[i].dt - (-dot3(u, q.u[i].g) + (JxH[i] - q.p.g[i]) / r);
  fS = q.S.dt - (dot3(J, J) / b - dot3(u, q.S.g));
}

template <class Fn>
void for_each_point(const TorusGrid& grid, Fn&& fn) {
  const auto& s = grid.shape();
  for (int i0 = 0; i0 < s[0]; ++i0)
    for (int i1 = 0; i1 < s[1]; ++i1)
      for (int i2 = 0; i2 < s[2]; ++i2)
        fn(grid.index(i0, i1, i2), grid.coordinate(i0), grid.coordinate(i1));
}

Point evaluate(const Fields& f, double x, double y, double t, bool steady) {
  Point q;
  q.p = f.p.at(x, y, t, steady);
  q.S = f.S.at(x, y, t, steady);
  for (int i = 0; i < 3; ++i) {
    q.u[i] = f.u[i].at(x, y, t, steady);
    q.E[i] = f.E[i].at(x, y, t, steady);
    q.H[i] = f.H[i].at(x, y, t, steady);
  }
  return q;
}

double max_dev(const ScalarField& a, const ScalarField& b) { return (a - b).max_abs(); }
double max_dev(const VectorField& a, const VectorField& b) { return (a - b).max_abs(); }

}  // namespace

ManufacturedSolution::ManufacturedSolution(bool steady, double amp) : steady_(steady), amp_(amp) {}

EmState ManufacturedSolution::em_state(const TorusGrid& grid, double t) const {
  if (grid.active_dims() < 2) throw UsageError("manufactured solution needs active_dims >= 2");
  const Fields f = make_fields(amp_);
  EmState s(grid);
  std::array<std::span<double>, 11> out{s.p.mutable_phys(), s.S.mutable_phys(),
                                        s.u[0].mutable_phys(), s.u[1].mutable_phys(), s.u[2].mutable_phys(),
                                        s.E[0].mutable_phys(), s.E[1].mutable_phys(), s.E[2].mutable_phys(),
                                        s.H[0].mutable_phys(), s.H[1].mutable_phys(), s.H[2].mutable_phys()};
  for_each_point(grid, [&](std::size_t k, double x, double y) {
    const Point q = evaluate(f, x, y, t, steady_);
    out[0][k] = q.p.v;
    out[1][k] = q.S.v;
    for (int i = 0; i < 3; ++i) {
      out[2 + i][k] = q.u[i].v;
      out[5 + i][k] = q.E[i].v;
      out[8 + i][k] = q.H[i].v;
    }
  });
  s.t = t;
  return s;
}

MhdState ManufacturedSolution::mhd_state(const TorusGrid& grid, double t) const {
  EmState e = em_state(grid, t);
  return MhdState(std::move(e.p), std::move(e.u), std::move(e.S), std::move(e.H), t);
}

EmRates ManufacturedSolution::em_forcing(const TorusGrid& grid, double t, double epsilon,
                                         const EosClosure& eos) const {
  const Fields f = make_fields(amp_);
  EmRates r(grid);
  std::array<std::span<double>, 11> out{r.dp.mutable_phys(), r.dS.mutable_phys(),
                                        r.du[0].mutable_phys(), r.du[1].mutable_phys(), r.du[2].mutable_phys(),
                                        r.dE[0].mutable_phys(), r.dE[1].mutable_phys(), r.dE[2].mutable_phys(),
                                        r.dH[0].mutable_phys(), r.dH[1].mutable_phys(), r.dH[2].mutable_phys()};
  for_each_point(grid, [&](std::size_t k, double x, double y) {
    const Point q = evaluate(f, x, y, t, steady_);
    const Vec3 u = values(q.u), H = values(q.H), E = values(q.E);
    const Vec3 uxH = cross3(u, H);
    const Vec3 J{E[0] + uxH[0], E[1] + uxH[1], E[2] + uxH[2]};
    double fp, fS;
    Vec3 fu;
    fluid_defect(q, J, eos, fp, fu, fS);
    out[0][k] = fp;
    out[1][k] = fS;
    const Vec3 cH = curl3(q.H), cE = curl3(q.E);
    for (int i = 0; i < 3; ++i) {
      out[2 + i][k] = fu[i];
      out[5 + i][k] = q.E[i].dt - (cH[i] - J[i]) / epsilon;
      out[8 + i][k] = q.H[i].dt + cE[i];
    }
  });
  return r;
}

MhdRates ManufacturedSolution::mhd_forcing(const TorusGrid& grid, double t,
                                           const EosClosure& eos) const {
  const Fields f = make_fields(amp_);
  MhdRates r(grid);
  std::array<std::span<double>, 8> out{r.dp.mutable_phys(), r.dS.mutable_phys(),
                                       r.du[0].mutable_phys(), r.du[1].mutable_phys(), r.du[2].mutable_phys(),
                                       r.dH[0].mutable_phys(), r.dH[1].mutable_phys(), r.dH[2].mutable_phys()};
  for_each_point(grid, [&](std::size_t k, double x, double y) {
    const Point q = evaluate(f, x, y, t, steady_);
    const Vec3 J = curl3(q.H);
    double fp, fS;
    Vec3 fu;
    fluid_defect(q, J, eos, fp, fu, fS);
    out[0][k] = fp;
    out[1][k] = fS;
    const Vec3 u = values(q.u), H = values(q.H);
    const double du = div3(q.u), dH = div3(q.H);
    for (int i = 0; i < 3; ++i) {
      out[2 + i][k] = fu[i];
      // curl(u x H) = (H.grad)u - (u.grad)H + u div H - H div u
      const double adv = dot3(H, q.u[i].g) - dot3(u, q.H[i].g) + u[i] * dH - H[i] * du;
      out[5 + i][k] = q.H[i].dt - (adv + q.H[i].lap);
    }
  });
  return r;
}

double mms_em_error(const MmsConfig& cfg, int n, int steps, bool steady) {
  const TorusGrid grid(n, 2);
  const ManufacturedSolution ms(steady, cfg.amp);
  EmRunConfig rc;
  rc.epsilon = cfg.epsilon;
  rc.dt = cfg.t_final / steps;
  rc.t_final = cfg.t_final;
  rc.eos = cfg.eos;
  rc.scheme = cfg.scheme;
  rc.cfl_guard = false;
  EmSolver solver(rc);
  const double eps = cfg.epsilon;
  const EosClosure eos = cfg.eos;
  solver.set_forcing([&ms, grid, eps, eos](double t) { return ms.em_forcing(grid, t, eps, eos); });
  EmState s = ms.em_state(grid, 0.0);
  for (int i = 0; i < steps; ++i) s = solver.step(s);
  const EmState ex = ms.em_state(grid, s.t);
  return std::max({max_dev(s.p, ex.p), max_dev(s.S, ex.S), max_dev(s.u, ex.u),
                   max_dev(s.E, ex.E), max_dev(s.H, ex.H)});
}

double mms_mhd_error(const MmsConfig& cfg, int n, int steps, bool steady) {
  const TorusGrid grid(n, 2);
  const ManufacturedSolution ms(steady, cfg.amp);
  MhdRunConfig rc;
  rc.dt = cfg.t_final / steps;
  rc.eos = cfg.eos;
  rc.cfl_guard = false;
  MhdSolver solver(rc);
  const EosClosure eos = cfg.eos;
  solver.set_forcing([&ms, grid, eos](double t) { return ms.mhd_forcing(grid, t, eos); });
  MhdState s = ms.mhd_state(grid, 0.0);
  for (int i = 0; i < steps; ++i) s = solver.step(s);
  const MhdState ex = ms.mhd_state(grid, s.t);
  return std::max({max_dev(s.p, ex.p), max_dev(s.S, ex.S), max_dev(s.u, ex.u),
                   max_dev(s.H, ex.H)});
}

bool MmsReport::pass(double min_order, double min_drop) const {
  return em.order >= min_order && mhd.order >= min_order && em.spatial_drop >= min_drop &&
         mhd.spatial_drop >= min_drop;
}

MmsReport mms_verify(const MmsConfig& cfg) {
  if (cfg.step_counts.size() < 3) throw UsageError("mms_verify: need at least three step counts");
  MmsReport rep;
  rep.em.solver = "euler-maxwell";
  rep.mhd.solver = "mhd";
  for (int steps : cfg.step_counts) {
    const double dt = cfg.t_final / steps;
    rep.em.dts.push_back(dt);
    rep.mhd.dts.push_back(dt);
    rep.em.errors.push_back(mms_em_error(cfg, cfg.n, steps, false));
    rep.mhd.errors.push_back(mms_mhd_error(cfg, cfg.n, steps, false));
  }
  auto order = [](const MmsSeries& s) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < s.dts.size(); ++i) pts.emplace_back(s.dts[i], s.errors[i]);
    return fit_rate(pts).slope;
  };
  rep.em.order = order(rep.em);
  rep.mhd.order = order(rep.mhd);

  rep.em.coarse_error = mms_em_error(cfg, cfg.n_coarse, cfg.em_spatial_steps, true);
  rep.em.fine_error = mms_em_error(cfg, cfg.n, cfg.em_spatial_steps, true);
  rep.mhd.coarse_error = mms_mhd_error(cfg, cfg.n_coarse, cfg.mhd_spatial_steps, true);
  rep.mhd.fine_error = mms_mhd_error(cfg, cfg.n, cfg.mhd_spatial_steps, true);
  rep.em.spatial_drop = rep.em.coarse_error / rep.em.fine_error;
  rep.mhd.spatial_drop = rep.mhd.coarse_error / rep.mhd.fine_error;
  return rep;
}

}  // namespace dlimit
