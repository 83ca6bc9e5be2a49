#include "dlimit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <optional>
#include <sstream>
#include <thread>

#include "dlimit/csv.hpp"
#include "dlimit/diagnostics.hpp"
#include "dlimit/error_analysis.hpp"
#include "dlimit/errors.hpp"
#include "dlimit/initial_data.hpp"
#include "dlimit/spectral.hpp"

namespace dlimit {

namespace {

void sync_all(const MhdState& s) {
  s.p.sync();
  s.u.sync();
  s.S.sync();
  s.H.sync();
}

std::string context(double eps, double t) {
  std::ostringstream os;
  os << "run at eps=" << eps << " failed near t=" << t << ": ";
  return os.str();
}

}  // namespace

std::pair<double, int> choose_step(const ExperimentConfig& cfg, const MhdState& ic) {
  const double T = cfg.t_final;
  if (cfg.dt > 0.0) {
    const int steps = static_cast<int>(std::lround(T / cfg.dt));
    if (steps < 1 || std::abs(steps * cfg.dt - T) > 1e-9 * T)
      throw UsageError("config: sweep.dt must divide sweep.t_final");
    return {T / steps, steps};
  }
  const double speed = mhd_wave_speed(ic, cfg.eos());
  const double dt_max = 0.9 * cfg.cfl * ic.grid().spacing() / speed;
  const int m = cfg.snapshot_every;
  const int steps = static_cast<int>(std::ceil(T / dt_max / m)) * m;
  return {T / steps, steps};
}

Background compute_background(const ExperimentConfig& cfg) {
  cfg.validate();
  const EosClosure eos = cfg.eos();
  MhdState cur = default_background_ic(cfg.grid(), eos, cfg.amp);
  Background bg;
  std::tie(bg.dt, bg.steps) = choose_step(cfg, cur);

  MhdRunConfig rc;
  rc.dt = 0.5 * bg.dt;
  rc.cfl = cfg.cfl;
  rc.eos = eos;
  MhdSolver solver(rc);

  bg.states.reserve(bg.steps + 1);
  sync_all(cur);
  bg.sup_div_H = div(cur.H).max_abs();
  bg.states.push_back(cur);
  for (int k = 1; k <= bg.steps; ++k) {
    try {
      cur = solver.advance(cur, k * bg.dt);
    } catch (const PositivityError& e) {
      throw PositivityError("MHD background: " + std::string(e.what()), e.time(),
                            e.min_pressure(), e.min_entropy());
    }
    cur.t = k * bg.dt;
    sync_all(cur);
    bg.sup_div_H = std::max(bg.sup_div_H, div(cur.H).max_abs());
    bg.states.push_back(cur);
  }
  return bg;
}

PairResult run_pair(const ExperimentConfig& cfg, const Background& bg, double epsilon) {
  if (bg.states.empty()) throw UsageError("run_pair: empty background");
  const EosClosure eos = cfg.eos();
  const double s_max = *std::max_element(cfg.s_list.begin(), cfg.s_list.end());

  PairResult out;
  SweepRow& row = out.row;
  row.config_hash = cfg.hash_hex();
  row.epsilon = epsilon;

  EmRunConfig rc;
  rc.epsilon = epsilon;
  rc.dt = bg.dt;
  rc.t_final = cfg.t_final;
  rc.cfl = cfg.cfl;
  rc.eos = eos;
  rc.scheme = cfg.scheme;
  RecordingSink sink;
  EmSolver solver(rc, &sink);

  EmState em = well_prepared_init(bg.states[0], epsilon, cfg.perturb_amp, cfg.seed, s_max);
  DampingIntegral damping;
  for (int k = 0; k <= bg.steps; ++k) {
    const MhdState& b = bg.states[k];
    try {
      if (k > 0) em = solver.step(em);
    } catch (const PositivityError& e) {
      throw PositivityError(context(epsilon, e.time()) + e.what(), e.time(), e.min_pressure(),
                            e.min_entropy());
    } catch (const std::exception& e) {
      throw NumericalError(context(epsilon, em.t) + e.what());
    }
    em.t = b.t;

    const ErrorState W = error_state(em, b);
    const EnergyReport rep = energy_report(W, epsilon, cfg.s_list);
    const EnergyLevel& l0 = rep.at(0.0);
    const EnergyLevel& l2 = rep.at(2.0);
    const EnergyLevel& l4 = rep.at(4.0);
    const EnergyLevel& lg = rep.at(cfg.gamma_s);
    damping.add(em.t, l0.f_norm);

    const double div_H = div(em.H).max_abs();
    const double sq = std::sqrt(epsilon);
    row.sup_norm_s0 = std::max(row.sup_norm_s0, l0.norm);
    row.sup_norm_s2 = std::max(row.sup_norm_s2, l2.norm);
    row.sup_norm_s4 = std::max(row.sup_norm_s4, l4.norm);
    row.sup_sqrt_eps_f_s0 = std::max(row.sup_sqrt_eps_f_s0, sq * l0.f_norm);
    row.sup_sqrt_eps_f_s2 = std::max(row.sup_sqrt_eps_f_s2, sq * l2.f_norm);
    row.sup_f_s0 = std::max(row.sup_f_s0, l0.f_norm);
    row.sup_f_s2 = std::max(row.sup_f_s2, l2.f_norm);
    row.sup_gamma = std::max(row.sup_gamma, lg.gamma);
    row.sup_div_H = std::max(row.sup_div_H, div_H);
    row.sup_div_G = std::max(row.sup_div_G, div(W.G).max_abs());

    if (k % cfg.snapshot_every == 0 || k == bg.steps) {
      SeriesRow r;
      r.t = em.t;
      r.norm_s0 = l0.norm;
      r.norm_s2 = l2.norm;
      r.norm_s4 = l4.norm;
      r.weighted_s0 = l0.weighted;
      r.weighted_s2 = l2.weighted;
      r.f_norm_s0 = l0.f_norm;
      r.damping_accum = damping.value();
      r.gamma = lg.gamma;
      r.min_p = em.p.min();
      r.min_S = em.S.min();
      r.div_H = div_H;
      out.series.push_back(r);
    }
  }
  row.damping = damping.value();
  row.t_reached = em.t;
  row.steps = bg.steps;
  for (const auto& w : sink.warnings) out.warnings.push_back(w);
  out.final_state = std::move(em);
  return out;
}

ResidualStudy residual_convergence(const ExperimentConfig& cfg, double epsilon, int levels) {
  if (levels < 3) throw UsageError("residual_convergence: need at least 3 levels");
  const EosClosure eos = cfg.eos();
  const int base = choose_step(cfg, default_background_ic(cfg.grid(), eos, cfg.amp)).second;
  const double T = cfg.t_final;
  const int m = cfg.snapshot_every;

  ResidualStudy out;
  out.epsilon = epsilon;
  std::vector<std::vector<ErrorResidual>> per_level;
  for (int j = 0; j < levels; ++j) {
    ExperimentConfig c = cfg;
    const int steps = base << j;
    c.dt = T / steps;
    const Background bg = compute_background(c);

    EmRunConfig rc;
    rc.epsilon = epsilon;
    rc.dt = bg.dt;
    rc.t_final = T;
    rc.cfl = c.cfl;
    rc.eos = eos;
    rc.scheme = c.scheme;
    EmSolver solver(rc);
    const double s_max = *std::max_element(c.s_list.begin(), c.s_list.end());
    EmState em = well_prepared_init(bg.states[0], epsilon, c.perturb_amp, c.seed, s_max);
    std::vector<EmState> em_traj{em};
    std::vector<MhdState> mhd_traj{bg.states[0]};
    for (int k = 1; k <= bg.steps; ++k) {
      em = solver.step(em);
      em.t = bg.states[k].t;
      if (k % m == 0) {
        em_traj.push_back(em);
        mhd_traj.push_back(bg.states[k]);
      }
    }
    per_level.push_back(error_residual(em_traj, mhd_traj, epsilon, eos));
    out.steps.push_back(bg.steps);
    out.dts.push_back(bg.dt);
  }

  for (const auto& r : per_level.front()) out.times.push_back(r.t);
  if (out.times.empty()) throw UsageError("residual_convergence: horizon too short for the stencil");
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; j < levels; ++j) {
    double worst = 0.0;
    for (double t : out.times) {
      const auto it = std::find_if(per_level[j].begin(), per_level[j].end(), [&](const auto& r) {
        return std::abs(r.t - t) <= 1e-9 * T;
      });
      if (it == per_level[j].end()) throw NumericalError("residual_convergence: misaligned snapshots");
      worst = std::max(worst, it->total());
    }
    out.residual.push_back(worst);
    pts.emplace_back(out.dts[j], worst);
  }
  out.fit = fit_rate(pts);
  return out;
}

const std::vector<std::string>& rate_metrics() {
  static const std::vector<std::string> names{
      "norm_s0", "norm_s2", "norm_s4", "sqrt_eps_f_s0", "sqrt_eps_f_s2",
      "f_s0",    "f_s2",    "damping", "gamma"};
  return names;
}

double metric_value(const SweepRow& r, const std::string& m) {
  if (m == "norm_s0") return r.sup_norm_s0;
  if (m == "norm_s2") return r.sup_norm_s2;
  if (m == "norm_s4") return r.sup_norm_s4;
  if (m == "sqrt_eps_f_s0") return r.sup_sqrt_eps_f_s0;
  if (m == "sqrt_eps_f_s2") return r.sup_sqrt_eps_f_s2;
  if (m == "f_s0") return r.sup_f_s0;
  if (m == "f_s2") return r.sup_f_s2;
  if (m == "damping") return r.damping;
  if (m == "gamma") return r.sup_gamma;
  throw UsageError("unknown metric '" + m + "'");
}

const RateFit& SweepReport::fit(const std::string& metric) const {
  for (const auto& [name, f] : fits)
    if (name == metric) return f;
  throw UsageError("SweepReport: no fit for '" + metric + "'");
}

SweepReport summarize(std::vector<SweepRow> rows) {
  SweepReport rep;
  if (rows.empty()) throw UsageError("summarize: no rows");
  rep.config_hash = rows.front().config_hash;
  for (const auto& r : rows) {
    if (r.config_hash != rep.config_hash)
      throw UsageError("refusing to aggregate rows from different configurations (" +
                       rep.config_hash + " vs " + r.config_hash + ")");
  }
  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.epsilon < b.epsilon; });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].epsilon == rows[i - 1].epsilon)
      throw UsageError("summarize: duplicate epsilon in rows");
  rep.rows = std::move(rows);

  for (const auto& m : rate_metrics()) {
    bool monotone = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
      monotone = monotone && metric_value(rep.rows[i - 1], m) < metric_value(rep.rows[i], m);
    if (!monotone) rep.warnings.push_back("metric " + m + " is not monotone in epsilon");
    if (rep.rows.size() < 3) continue;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rep.rows) pts.emplace_back(r.epsilon, metric_value(r, m));
    RateFit f = fit_rate(pts);
    for (const auto& w : f.warnings) rep.warnings.push_back(m + ": " + w);
    rep.fits.emplace_back(m, std::move(f));
  }
  if (rep.rows.size() < 3) rep.warnings.push_back("fewer than three epsilons: no slopes fitted");

  const SweepRow& top = rep.rows.back();
  rep.gamma_C = top.sup_gamma / (top.epsilon * top.epsilon);
  for (const auto& r : rep.rows) {
    const double bound = rep.gamma_C * r.epsilon * r.epsilon;
    if (bound > 0.0) rep.gamma_max_ratio = std::max(rep.gamma_max_ratio, r.sup_gamma / bound);
  }
  return rep;
}

int resolve_workers(int requested, int jobs) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DLL_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1)
      throw UsageError(std::string("DLL_THREADS must be a positive integer, got '") + env + "'");
    n = std::min<long>(n, cap);
  }
  n = std::min(n, jobs);
  return std::max(n, 1);
}

SweepReport sweep_epsilon(const ExperimentConfig& cfg, int workers, const std::string& out_dir) {
  cfg.validate();
  const Background bg = compute_background(cfg);
  const std::size_t jobs = cfg.epsilons.size();
  const int nthreads = resolve_workers(workers, static_cast<int>(jobs));

  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

  std::vector<std::optional<PairResult>> results(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) {
      try {
        results[i] = run_pair(cfg, bg, cfg.epsilons[i]);
        if (!out_dir.empty()) {
          const auto path = std::filesystem::path(out_dir) /
                            ("series_" + epsilon_tag(cfg.epsilons[i]) + ".csv");
          write_series_csv(path.string(), cfg.hash_hex(), cfg.epsilons[i], results[i]->series);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<SweepRow> rows;
  std::vector<std::string> run_warnings;
  for (std::size_t i = 0; i < jobs; ++i) {
    rows.push_back(results[i]->row);
    for (const auto& w : results[i]->warnings)
      run_warnings.push_back("eps=" + epsilon_tag(cfg.epsilons[i]) + ": " + w);
  }
  SweepReport rep = summarize(std::move(rows));
  rep.warnings.insert(rep.warnings.begin(), run_warnings.begin(), run_warnings.end());
  if (!out_dir.empty())
    write_sweep_report((std::filesystem::path(out_dir) / "sweep_report.csv").string(), rep);
  return rep;
}

}  // namespace dlimit
