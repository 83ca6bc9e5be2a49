// dlimit: Euler-Maxwell / MHD limit experiments on the periodic box.
//
//   dlimit run   --config c.ini --epsilon 0.01 --out dir
//   dlimit sweep --config c.ini --workers 4 --out dir
//   dlimit mms
//   dlimit check --seed 7
//
// Exit status: 0 when every enabled check passes, 1 when a check fails,
// 2 on bad usage, 3 when a run aborts.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "dlimit/checkpoint.hpp"
#include "dlimit/checks.hpp"
#include "dlimit/config.hpp"
#include "dlimit/csv.hpp"
#include "dlimit/errors.hpp"
#include "dlimit/mms.hpp"
#include "dlimit/sweep.hpp"

namespace fs = std::filesystem;
using namespace dlimit;

namespace {

struct Options {
  std::string config;
  std::optional<double> epsilon;
  std::string out;
  int workers = 0;
  std::optional<std::uint64_t> seed;
};

ExperimentConfig resolve(const Options& o) {
  ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (o.seed) cfg.seed = *o.seed;
  cfg.validate();
  return cfg;
}

void print_checks(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs) {
    std::printf("%-4s %-58s %.3e (limit %.3e)%s%s\n", r.pass ? "ok" : "FAIL", r.name.c_str(),
                r.value, r.threshold, r.detail.empty() ? "" : "  ", r.detail.c_str());
  }
}

int cmd_run(const Options& o) {
  const ExperimentConfig cfg = resolve(o);
  const double eps = o.epsilon.value_or(cfg.epsilons.front());
  if (!(eps > 0.0)) throw UsageError("--epsilon must be positive");
  fs::create_directories(cfg.output_dir);

  const Background bg = compute_background(cfg);
  const PairResult res = run_pair(cfg, bg, eps);
  const fs::path dir(cfg.output_dir);
  write_series_csv((dir / ("series_" + epsilon_tag(eps) + ".csv")).string(), cfg.hash_hex(), eps,
                   res.series);
  write_checkpoint((dir / ("em_final_" + epsilon_tag(eps) + ".ckpt")).string(), *res.final_state,
                   cfg.hash_hex());
  write_checkpoint((dir / "mhd_final.ckpt").string(), bg.states.back(), cfg.hash_hex());
  for (const auto& w : res.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

  const SweepRow& r = res.row;
  std::printf("config %s  eps %g  dt %g  steps %d  t %g\n", cfg.hash_hex().c_str(), eps, bg.dt,
              r.steps, r.t_reached);
  std::printf("sup ||(P,U,Phi,G)||_0 %.6e   _2 %.6e   _4 %.6e\n", r.sup_norm_s0, r.sup_norm_s2,
              r.sup_norm_s4);
  std::printf("sup sqrt(eps)||F||_0 %.6e   sup ||F||_0 %.6e\n", r.sup_sqrt_eps_f_s0, r.sup_f_s0);
  std::printf("int ||F||^2 %.6e   sup Gamma %.6e   max div H %.3e\n", r.damping, r.sup_gamma,
              r.sup_div_H);
  return 0;
}

int cmd_sweep(const Options& o) {
  const ExperimentConfig cfg = resolve(o);
  const SweepReport rep = sweep_epsilon(cfg, o.workers, cfg.output_dir);
  std::printf("config %s, %zu epsilons, report in %s\n", rep.config_hash.c_str(), rep.rows.size(),
              (fs::path(cfg.output_dir) / "sweep_report.csv").string().c_str());
  for (const auto& [name, f] : rep.fits)
    std::printf("  slope %-14s %7.4f  [%7.4f, %7.4f]%s\n", name.c_str(), f.slope, f.ci_low,
                f.ci_high, f.outlier ? "  outlier" : "");
  for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  if (rep.rows.size() < 3) return 0;
  const auto checks = rate_checks(rep);
  print_checks(checks);
  return all_pass(checks) ? 0 : 1;
}

int cmd_mms(const Options& o) {
  const ExperimentConfig cfg = resolve(o);
  MmsConfig mc;
  mc.eos = cfg.eos();
  mc.scheme = cfg.scheme;
  const MmsReport rep = mms_verify(mc);
  for (const MmsSeries* s : {&rep.em, &rep.mhd}) {
    std::printf("%s: temporal order %.3f, errors", s->solver.c_str(), s->order);
    for (double e : s->errors) std::printf(" %.3e", e);
    std::printf("\n  spatial: n=%d %.3e, n=%d %.3e, drop %.1fx\n", mc.n_coarse, s->coarse_error,
                mc.n, s->fine_error, s->spatial_drop);
  }
  bool ok = rep.pass();
  std::printf("%s\n", ok ? "mms: pass" : "mms: FAIL (order < 1.9 or drop < 50x)");

  // Error-system algebra: the differenced residual must vanish with dt.
  const double eps = o.epsilon.value_or(5e-2);
  const ResidualStudy rs = residual_convergence(cfg, eps);
  std::printf("error residual at eps %g:", eps);
  for (std::size_t j = 0; j < rs.dts.size(); ++j)
    std::printf(" dt=%.4g %.3e", rs.dts[j], rs.residual[j]);
  const bool rs_ok = rs.fit.slope >= 1.9;
  std::printf("\n  order %.3f  %s\n", rs.fit.slope, rs_ok ? "pass" : "FAIL (< 1.9)");
  ok = ok && rs_ok;
  return ok ? 0 : 1;
}

int cmd_check(const Options& o) {
  const ExperimentConfig cfg = resolve(o);
  auto results = structural_checks(cfg, cfg.seed);
  const auto eos = eos_checks(cfg.eos(), cfg.seed);
  results.insert(results.end(), eos.begin(), eos.end());
  print_checks(results);
  return all_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler-Maxwell to MHD limit experiments on the 2pi-periodic torus"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory (overrides [output] dir)");
    sub->add_option("--seed", o.seed, "RNG seed for the initial perturbations");
    sub->add_option("--workers", o.workers, "parallel runs (capped by DLL_THREADS)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", o.epsilon, "dielectric constant for `run` and the `mms` residual study");
  };
  auto* run = app.add_subcommand("run", "one Euler-Maxwell / MHD pair");
  auto* sweep = app.add_subcommand("sweep", "epsilon sweep with rate fits");
  auto* mms = app.add_subcommand("mms", "manufactured-solution and error-residual verification");
  auto* check = app.add_subcommand("check", "identity and invariant suite");
  for (auto* s : {run, sweep, mms, check}) add_common(s);

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (mms->parsed()) return cmd_mms(o);
    return cmd_check(o);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "aborted: %s\n", e.what());
    return 3;
  }
}
