#include "dlimit/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dlimit/error_analysis.hpp"
#include "dlimit/initial_data.hpp"
#include "dlimit/spectral.hpp"
#include "dlimit/sweep.hpp"
#include "random_fields.hpp"

namespace dlimit {

namespace {

CheckResult at_most(std::string name, double value, double threshold, std::string detail = "") {
  return {std::move(name), value, threshold, value <= threshold, std::move(detail)};
}

CheckResult at_least(std::string name, double value, double threshold, std::string detail = "") {
  return {std::move(name), value, threshold, value >= threshold, std::move(detail)};
}

VectorField unit_vector(const TorusGrid& g, std::mt19937_64& rng, int kmax) {
  VectorField v = detail::random_trig_vector(g, rng, kmax);
  return (1.0 / l2_norm(v)) * v;
}

ScalarField unit_scalar(const TorusGrid& g, std::mt19937_64& rng, int kmax) {
  ScalarField f = detail::random_trig_field(g, rng, kmax);
  return (1.0 / l2_norm(f)) * f;
}

}  // namespace

std::vector<CheckResult> structural_checks(const ExperimentConfig& cfg, std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  const TorusGrid grids[] = {cfg.grid(), TorusGrid(16, 3)};

  double cancel = 0.0, divcurl = 0.0, curlgrad = 0.0, viaB = 0.0;
  for (const auto& g : grids) {
    const int kmax = std::min(4, g.n() / 3);
    for (int i = 0; i < 100; ++i) {
      const VectorField F = unit_vector(g, rng, kmax);
      const VectorField G = unit_vector(g, rng, kmax);
      cancel = std::max(cancel, cancellation_check(F, G));
      divcurl = std::max(divcurl, div(curl(F)).max_abs());
      viaB = std::max(viaB, (curl_via_B(F) - curl(F)).max_abs());
      curlgrad = std::max(curlgrad, curl(grad(unit_scalar(g, rng, kmax))).max_abs());
    }
  }
  out.push_back(at_most("cancellation |int div(F x G)|, 200 random unit pairs", cancel, 1e-12));
  out.push_back(at_most("max |div curl w|", divcurl, 1e-12));
  out.push_back(at_most("max |curl grad f|", curlgrad, 1e-12));
  out.push_back(at_most("max |curl_via_B v - curl v|", viaB, 1e-13));

  // Div-curl ratio: random samples on two resolutions of the same functions.
  double K_coarse = 0.0, K_fine = 0.0;
  {
    const TorusGrid gc(32, 2), gf(64, 2);
    std::mt19937_64 r1(seed ^ 0x9e3779b97f4a7c15ull), r2(seed ^ 0x9e3779b97f4a7c15ull);
    for (int i = 0; i < 1000; ++i) {
      const int sigma = 1 + i % 4;
      const VectorField Uc = detail::random_trig_vector(gc, r1, 4);
      const ScalarField Pc = detail::random_trig_field(gc, r1, 4);
      const VectorField Uf = detail::random_trig_vector(gf, r2, 4);
      const ScalarField Pf = detail::random_trig_field(gf, r2, 4);
      K_coarse = std::max(K_coarse, div_curl_bound_check(Uc, sigma, Pc));
      K_fine = std::max(K_fine, div_curl_bound_check(Uf, sigma, Pf));
    }
  }
  {
    std::ostringstream os;
    os << "empirical K = " << K_fine << " (n=64), " << K_coarse << " (n=32)";
    const double drift = std::abs(K_fine - K_coarse) / K_coarse;
    CheckResult r = at_most("div-curl ratio: finite and stable under refinement", drift, 0.1, os.str());
    r.pass = r.pass && std::isfinite(K_fine) && K_fine > 0.0;
    out.push_back(r);
  }

  // Full default run at the smallest epsilon.
  const Background bg = compute_background(cfg);
  const double eps = cfg.epsilons.back();
  const PairResult run = run_pair(cfg, bg, eps);
  out.push_back(at_most("max |div H| over the Euler-Maxwell run", run.row.sup_div_H, 1e-11));
  out.push_back(at_most("max |div H| over the MHD run", bg.sup_div_H, 1e-11));
  out.push_back(at_most("max |div G| over the run", run.row.sup_div_G, 1e-11));

  // Symmetric form on a mid-run error state.
  {
    const int k = bg.steps / 2;
    EmRunConfig rc;
    rc.epsilon = eps;
    rc.dt = bg.dt;
    rc.cfl = cfg.cfl;
    rc.eos = cfg.eos();
    rc.scheme = cfg.scheme;
    EmSolver solver(rc);
    EmState em = well_prepared_init(bg.states[0], eps, cfg.perturb_amp, cfg.seed, 4.0);
    for (int i = 0; i < k; ++i) em = solver.step(em);
    em.t = bg.states[k].t;
    const ErrorState W = error_state(em, bg.states[k]);
    const SymmetricForm sf = symmetric_form(W, bg.states[k], eps, cfg.eos());
    constexpr int N = SymmetricForm::kDim;
    double asym = 0.0, dmin = INFINITY, expected = INFINITY, offdiag = 0.0;
    const ScalarField p_em = W.P + bg.states[k].p;
    const ScalarField s_em = W.Phi + bg.states[k].S;
    const auto ps = p_em.phys();
    const auto ss = s_em.phys();
    const EosClosure eos = cfg.eos();
    for (std::size_t x = 0; x < sf.points(); ++x) {
      for (int i = 0; i < 3; ++i)
        for (int r = 0; r < N; ++r)
          for (int c = 0; c < N; ++c)
            asym = std::max(asym, std::abs(sf.A[i][x][r * N + c] - sf.A[i][x][c * N + r]));
      for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
          if (r == c) dmin = std::min(dmin, sf.D[x][r * N + c]);
          else offdiag = std::max(offdiag, std::abs(sf.D[x][r * N + c]));
        }
      const double p = ps[x], s = ss[x];
      expected = std::min({expected, 1.0 / (eos.gamma() * p), eos.density(s, p),
                           p / (eos.gamma() - 1.0), eps, 1.0});
    }
    out.push_back(at_most("max |A_i - A_i^T|", asym, 0.0));
    std::ostringstream os;
    os << "min diag " << dmin << ", closed form " << expected << ", max off-diagonal " << offdiag;
    CheckResult d = at_least("D diagonal positive and matching the closure", dmin, 0.0, os.str());
    d.pass = dmin > 0.0 && offdiag == 0.0 && std::abs(dmin - expected) <= 1e-12 * expected;
    out.push_back(d);
  }
  return out;
}

std::vector<CheckResult> eos_checks(const EosClosure& eos, std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dS(eos.S_floor(), 2.0);
  std::uniform_real_distribution<double> dp(eos.p_floor(), 10.0);
  double min_val = INFINITY, a_err = 0.0, ord_lo = INFINITY, ord_hi = -INFINITY;
  for (int i = 0; i < samples; ++i) {
    const double S = dS(rng);
    const double p = std::max(dp(rng), 2.0 * eos.p_floor());
    min_val = std::min({min_val, eos.density(S, p), eos.temperature(S, p), eos.coeff_a(S, p),
                        eos.coeff_b(S, p)});
    const double h = 1e-6 * p;
    const double fd = (eos.density(S, p + h) - eos.density(S, p - h)) / (2.0 * h) / eos.density(S, p);
    a_err = std::max(a_err, std::abs(fd - eos.coeff_a(S, p)) / eos.coeff_a(S, p));
    const double r1 = eos.gibbs_residual(S, p, 1e-3);
    const double r2 = eos.gibbs_residual(S, p, 5e-4);
    const double order = std::log2(r1 / r2);
    ord_lo = std::min(ord_lo, order);
    ord_hi = std::max(ord_hi, order);
  }
  std::vector<CheckResult> out;
  CheckResult pos = at_least("closure values positive", min_val, 0.0);
  pos.pass = min_val > 0.0;
  out.push_back(pos);
  out.push_back(at_most("max relative |FD d(ln r)/dp - coeff_a|", a_err, 1e-6));
  std::ostringstream os;
  os << "observed order range [" << ord_lo << ", " << ord_hi << "]";
  CheckResult g = at_most("Gibbs residual order within 2 +- 0.2",
                          std::max(std::abs(ord_lo - 2.0), std::abs(ord_hi - 2.0)), 0.2, os.str());
  out.push_back(g);
  return out;
}

std::vector<CheckResult> rate_checks(const SweepReport& rep) {
  std::vector<CheckResult> out;
  auto slope = [&](const std::string& m) { return rep.fit(m).slope; };
  for (const char* m : {"norm_s0", "norm_s2"}) {
    const double s = slope(m);
    CheckResult r{std::string("slope of sup ") + m + " in [0.85, 1.15]", s, 0.85, s >= 0.85 && s <= 1.15, ""};
    out.push_back(r);
  }
  out.push_back(at_least("slope of sup sqrt(eps) ||F||_0", slope("sqrt_eps_f_s0"), 0.85));
  out.push_back(at_least("slope of sup sqrt(eps) ||F||_2", slope("sqrt_eps_f_s2"), 0.85));
  out.push_back(at_least("slope of sup ||F||_0", slope("f_s0"), 0.4));
  out.push_back(at_least("slope of sup ||F||_2", slope("f_s2"), 0.4));
  out.push_back(at_least("slope of the damping integral", slope("damping"), 1.7));
  out.push_back(at_least("slope of sup Gamma", slope("gamma"), 1.7));
  std::ostringstream os;
  os << "C = " << rep.gamma_C << " fitted at eps = " << rep.rows.back().epsilon;
  out.push_back(at_most("max sup Gamma / (C eps^2)", rep.gamma_max_ratio, 10.0, os.str()));
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

}  // namespace dlimit
