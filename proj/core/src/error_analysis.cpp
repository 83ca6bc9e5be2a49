#include "dlimit/error_analysis.hpp"

#include <cmath>
#include <sstream>

#include "dlimit/diagnostics.hpp"
#include "dlimit/errors.hpp"
#include "dlimit/spectral.hpp"

namespace dlimit {

namespace {

void require_aligned(const TorusGrid& a, const TorusGrid& b, double ta, double tb) {
  if (!(a == b)) throw UsageError("error analysis: Euler-Maxwell and MHD grids differ");
  if (std::abs(ta - tb) > 1e-10 * std::max(1.0, std::abs(ta))) {
    std::ostringstream os;
    os << "error analysis: time mismatch (em t=" << ta << ", mhd t=" << tb << ")";
    throw UsageError(os.str());
  }
}

// X = F + U x G + U x H0 + u0 x G, i.e. the current difference J^eps - curl H0.
VectorField current_excess(const ErrorState& W, const MhdState& bg) {
  return W.F + dealias(cross(W.U, W.G) + cross(W.U, bg.H) + cross(bg.u, W.G));
}

// Time derivative of the induced field curl H0 - u0 x H0.
VectorField induced_E_rate(const MhdState& bg, const MhdRates& r) {
  return curl(r.dH) - dealias(cross(r.du, bg.H) + cross(bg.u, r.dH));
}

struct Coefficients {
  ScalarField a, r, b;
};

Coefficients coefficients(const ScalarField& S, const ScalarField& p, const EosClosure& eos) {
  return {coeff_a_field(S, p, eos), density_field(S, p, eos), coeff_b_field(S, p, eos)};
}

}  // namespace

ErrorState error_state(const EmState& em, const MhdState& mhd) {
  require_aligned(em.grid(), mhd.grid(), em.t, mhd.t);
  ErrorState w(em.grid());
  w.P = em.p - mhd.p;
  w.U = em.u - mhd.u;
  w.Phi = em.S - mhd.S;
  w.F = em.E - induced_E(mhd.u, mhd.H);
  w.G = em.H - mhd.H;
  w.t = em.t;
  return w;
}

SourceTerms source_terms(const ErrorState& W, const MhdState& bg, const MhdRates& bg_rates,
                         double epsilon, const EosClosure& eos) {
  require_aligned(W.grid(), bg.grid(), W.t, bg.t);
  const ScalarField Se = W.Phi + bg.S;
  const ScalarField pe = W.P + bg.p;
  const Coefficients ce = coefficients(Se, pe, eos);
  const Coefficients c0 = coefficients(bg.S, bg.p, eos);

  const VectorField gp0 = grad(bg.p);
  const VectorField gS0 = grad(bg.S);

  ScalarField f1 = dealias(-((ce.a - c0.a) * (bg_rates.dp + dot(bg.u, gp0))) -
                           ce.a * dot(W.U, gp0));

  const VectorField c = curl(bg.H);
  const VectorField X = current_excess(W, bg);
  const VectorField HG = bg.H + W.G;
  VectorField f2 = dealias(cross(c, W.G) + cross(X, HG));
  for (int i = 0; i < 3; ++i) {
    const VectorField gu = grad(bg.u[i]);
    f2[i] -= dealias((ce.r - c0.r) * (bg_rates.du[i] + dot(bg.u, gu)) + ce.r * dot(W.U, gu));
  }

  // Grouping as Y = F + U x G and Z = u0 x G + U x H0, so X = Y + Z.
  const VectorField Y = W.F + dealias(cross(W.U, W.G));
  const VectorField Z = dealias(cross(bg.u, W.G) + cross(W.U, bg.H));
  ScalarField f3 = dealias(-((ce.b - c0.b) * (bg_rates.dS + dot(bg.u, gS0))) -
                           ce.b * dot(W.U, gS0) + dot(Y, Y) + dot(Z, Z) +
                           2.0 * dot(Y, c + Z) + 2.0 * dot(c, Z));

  VectorField f4 = -X;
  f4.axpy(-epsilon, induced_E_rate(bg, bg_rates));

  return {std::move(f1), std::move(f2), std::move(f3), std::move(f4)};
}

SourceTerms source_terms(const ErrorState& W, const MhdState& bg, double epsilon,
                         const EosClosure& eos) {
  return source_terms(W, bg, mhd_full_rhs(bg, eos), epsilon, eos);
}

ErrorResidual error_defect(const ErrorState& W, const ErrorRates& dW, const MhdState& bg,
                           double epsilon, const EosClosure& eos) {
  const MhdRates bg_rates = mhd_full_rhs(bg, eos);
  const SourceTerms f = source_terms(W, bg, bg_rates, epsilon, eos);
  const Coefficients ce = coefficients(W.Phi + bg.S, W.P + bg.p, eos);
  const VectorField v = W.U + bg.u;

  ErrorResidual out;
  out.t = W.t;
  out.eq[0] = l2_norm(ce.a * (dW.dP + dot(v, grad(W.P))) + div(W.U) - f.f1);

  const VectorField gP = grad(W.P);
  VectorField r2(W.grid());
  for (int i = 0; i < 3; ++i)
    r2[i] = ce.r * (dW.dU[i] + dot(v, grad(W.U[i]))) + gP[i] - f.f2[i];
  out.eq[1] = l2_norm(r2);

  out.eq[2] = l2_norm(ce.b * (dW.dPhi + dot(v, grad(W.Phi))) - f.f3);
  out.eq[3] = l2_norm(epsilon * dW.dF - curl(W.G) - f.f4);
  out.eq[4] = l2_norm(dW.dG + curl(W.F));
  return out;
}

ErrorResidual instantaneous_residual(const EmState& em, const MhdState& mhd, double epsilon,
                                     const EosClosure& eos) {
  const ErrorState W = error_state(em, mhd);
  const EmRates re = em_full_rhs(em, eos, epsilon);
  const MhdRates r0 = mhd_full_rhs(mhd, eos);
  ErrorRates dW{re.dp - r0.dp, re.du - r0.du, re.dS - r0.dS,
                re.dE - induced_E_rate(mhd, r0), re.dH - r0.dH};
  return error_defect(W, dW, mhd, epsilon, eos);
}

std::vector<ErrorResidual> error_residual(const std::vector<EmState>& em_traj,
                                          const std::vector<MhdState>& mhd_traj,
                                          double epsilon, const EosClosure& eos) {
  const std::size_t n = em_traj.size();
  if (n < 5) throw UsageError("error_residual: need at least five snapshots");
  if (mhd_traj.size() != n) throw UsageError("error_residual: trajectory lengths differ");
  const double h = em_traj[1].t - em_traj[0].t;
  if (!(h > 0.0)) throw UsageError("error_residual: snapshot times must increase");
  for (std::size_t i = 1; i < n; ++i) {
    const double gap = em_traj[i].t - em_traj[i - 1].t;
    if (std::abs(gap - h) > 1e-9 * h) throw UsageError("error_residual: snapshots are not uniformly spaced");
  }

  std::vector<ErrorState> W;
  W.reserve(n);
  for (std::size_t i = 0; i < n; ++i) W.push_back(error_state(em_traj[i], mhd_traj[i]));

  // (f(t-2h) - 8 f(t-h) + 8 f(t+h) - f(t+2h)) / 12h
  const double w1 = 8.0 / (12.0 * h);
  const double w2 = -1.0 / (12.0 * h);
  auto d_scalar = [&](std::size_t i, ScalarField ErrorState::*m) {
    ScalarField d = w1 * (W[i + 1].*m - W[i - 1].*m);
    d.axpy(w2, W[i + 2].*m - W[i - 2].*m);
    return d;
  };
  auto d_vector = [&](std::size_t i, VectorField ErrorState::*m) {
    VectorField d = w1 * (W[i + 1].*m - W[i - 1].*m);
    d.axpy(w2, W[i + 2].*m - W[i - 2].*m);
    return d;
  };

  std::vector<ErrorResidual> out;
  out.reserve(n - 4);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    ErrorRates dW{d_scalar(i, &ErrorState::P), d_vector(i, &ErrorState::U),
                  d_scalar(i, &ErrorState::Phi), d_vector(i, &ErrorState::F),
                  d_vector(i, &ErrorState::G)};
    out.push_back(error_defect(W[i], dW, mhd_traj[i], epsilon, eos));
  }
  return out;
}

SymmetricForm symmetric_form(const ErrorState& W, const MhdState& bg, double epsilon,
                             const EosClosure& eos) {
  require_aligned(W.grid(), bg.grid(), W.t, bg.t);
  if (!(epsilon > 0.0)) throw UsageError("symmetric_form: epsilon must be positive");
  const ScalarField Se = W.Phi + bg.S;
  const ScalarField pe = W.P + bg.p;
  check_positivity(pe, Se, eos, W.t);

  constexpr int N = SymmetricForm::kDim;
  const auto ps = pe.phys();
  const auto ss = Se.phys();
  std::array<ScalarField, 3> v{W.U[0] + bg.u[0], W.U[1] + bg.u[1], W.U[2] + bg.u[2]};
  const auto& B = maxwell_matrices();

  SymmetricForm out;
  const std::size_t m = ps.size();
  out.D.assign(m, SymmetricForm::Matrix{});
  for (auto& a : out.A) a.assign(m, SymmetricForm::Matrix{});

  for (std::size_t x = 0; x < m; ++x) {
    const double a = eos.coeff_a(ss[x], ps[x]);
    const double r = eos.density(ss[x], ps[x]);
    const double b = eos.coeff_b(ss[x], ps[x]);
    auto& D = out.D[x];
    D[0] = a;
    for (int j = 1; j <= 3; ++j) D[j * N + j] = r;
    D[4 * N + 4] = b;
    for (int j = 5; j <= 7; ++j) D[j * N + j] = epsilon;
    for (int j = 8; j <= 10; ++j) D[j * N + j] = 1.0;

    for (int i = 0; i < 3; ++i) {
      const double vi = v[i].phys()[x];
      auto& A = out.A[i][x];
      A[0] = a * vi;
      A[0 * N + 1 + i] = 1.0;
      A[(1 + i) * N + 0] = 1.0;
      for (int j = 1; j <= 3; ++j) A[j * N + j] = r * vi;
      A[4 * N + 4] = b * vi;
      for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col) {
          A[(5 + row) * N + 8 + col] = B[i][row][col];
          A[(8 + row) * N + 5 + col] = B[i][col][row];
        }
    }
  }
  return out;
}

const EnergyLevel& EnergyReport::at(double s) const {
  for (const auto& l : levels)
    if (l.s == s) return l;
  std::ostringstream os;
  os << "EnergyReport: index s=" << s << " was not requested";
  throw UsageError(os.str());
}

EnergyReport energy_report(const ErrorState& W, double epsilon, const std::vector<double>& s_list) {
  if (s_list.empty()) throw UsageError("energy_report: s_list is empty");
  const double mags[] = {W.P.max_abs(), W.U.max_abs(), W.Phi.max_abs(), W.F.max_abs(),
                         W.G.max_abs()};
  const char* names[] = {"P", "U", "Phi", "F", "G"};
  for (int i = 0; i < 5; ++i) {
    if (!std::isfinite(mags[i])) {
      std::ostringstream os;
      os << "energy_report: non-finite values in " << names[i] << " at t=" << W.t;
      throw NumericalError(os.str());
    }
  }

  EnergyReport rep;
  rep.t = W.t;
  for (double s : s_list) {
    EnergyLevel l;
    l.s = s;
    l.norm = sobolev_norm(W.P, s) + sobolev_norm(W.U, s) + sobolev_norm(W.Phi, s) +
             sobolev_norm(W.G, s);
    l.f_norm = sobolev_norm(W.F, s);
    l.gamma = l.norm * l.norm + epsilon * l.f_norm * l.f_norm;
    l.weighted = std::sqrt(l.gamma);
    rep.levels.push_back(l);
  }
  return rep;
}

void DampingIntegral::add(double t, double f_l2) {
  const double sq = f_l2 * f_l2;
  if (started_) {
    if (t < t_) throw UsageError("DampingIntegral: time went backwards");
    value_ += 0.5 * (t - t_) * (sq + sq_);
  }
  started_ = true;
  t_ = t;
  sq_ = sq;
}

double cancellation_check(const VectorField& F, const VectorField& G) {
  return std::abs(inner(curl(F), G) - inner(curl(G), F));
}

double div_curl_bound_check(const VectorField& U, int sigma, const ScalarField& P) {
  if (sigma < 1 || sigma > 4) throw UsageError("div_curl_bound_check: sigma must be in 1..4");
  const double s = sigma;
  const double lhs = sobolev_norm(P, s) + sobolev_norm(U, s);
  const double rhs = sobolev_norm(div(U), s - 1) + sobolev_norm(grad(P), s - 1) +
                     sobolev_norm(curl(U), s - 1) + sobolev_norm(P, s - 1) +
                     sobolev_norm(U, s - 1);
  return rhs > 0.0 ? lhs / rhs : 0.0;
}

}  // namespace dlimit
