#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dlimit/errors.hpp"
#include "dlimit/initial_data.hpp"
#include "dlimit/sweep.hpp"

using namespace dlimit;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small() {
  ExperimentConfig c;
  c.n = 16;
  c.epsilons = {0.1, 0.05, 0.02, 0.01};
  c.t_final = 0.25;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST(Sweep, ChooseStep) {
  ExperimentConfig c = small();
  const MhdState ic = default_background_ic(c.grid(), c.eos(), c.amp);
  const auto [dt, steps] = choose_step(c, ic);
  EXPECT_EQ(steps % c.snapshot_every, 0);
  EXPECT_NEAR(dt * steps, c.t_final, 1e-15);
  EXPECT_LE(dt * mhd_wave_speed(ic, c.eos()), c.cfl * c.grid().spacing());
  c.dt = 0.025;
  EXPECT_EQ(choose_step(c, ic).second, 10);
  c.dt = 0.03;
  EXPECT_THROW(choose_step(c, ic), UsageError);
}

TEST(Sweep, PairRun) {
  const ExperimentConfig c = small();
  const Background bg = compute_background(c);
  ASSERT_EQ(static_cast<int>(bg.states.size()), bg.steps + 1);
  EXPECT_NEAR(bg.states.back().t, c.t_final, 1e-14);
  const PairResult r = run_pair(c, bg, 0.05);
  EXPECT_EQ(r.row.config_hash, c.hash_hex());
  EXPECT_NEAR(r.row.t_reached, c.t_final, 1e-14);
  EXPECT_EQ(static_cast<int>(r.series.size()), bg.steps / c.snapshot_every + 1);
  EXPECT_EQ(r.series.front().t, 0.0);
  EXPECT_EQ(r.series.front().damping_accum, 0.0);
  EXPECT_GE(r.row.sup_norm_s2, r.row.sup_norm_s0);
  EXPECT_NEAR(r.row.sup_sqrt_eps_f_s0, std::sqrt(0.05) * r.row.sup_f_s0, 1e-15);
  EXPECT_LE(r.row.sup_div_H, 1e-11);
  // Initial data are within L0 eps of the limit.
  EXPECT_LE(r.series.front().norm_s4, 0.05);
}

TEST(Sweep, DeterministicAcrossWorkers) {
  const ExperimentConfig c = small();
  const fs::path base = fs::temp_directory_path() / "dlimit_sweep_tests";
  fs::remove_all(base);
  const SweepReport r1 = sweep_epsilon(c, 1, (base / "w1").string());
  const SweepReport r3 = sweep_epsilon(c, 3, (base / "w3").string());
  ASSERT_EQ(r1.rows.size(), 4u);
  for (const auto& e : fs::directory_iterator(base / "w1")) {
    const fs::path other = base / "w3" / e.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(slurp(e.path()), slurp(other)) << e.path().filename();
  }
  EXPECT_TRUE(fs::exists(base / "w1" / "series_0.01.csv"));
  EXPECT_TRUE(fs::exists(base / "w1" / "sweep_report.csv"));
  EXPECT_EQ(r1.rows.front().epsilon, 0.01);
}

TEST(Sweep, WorkerCap) {
  ::unsetenv("DLL_THREADS");
  EXPECT_EQ(resolve_workers(8, 3), 3);
  EXPECT_GE(resolve_workers(0, 6), 1);
  ::setenv("DLL_THREADS", "2", 1);
  EXPECT_EQ(resolve_workers(8, 6), 2);
  ::setenv("DLL_THREADS", "junk", 1);
  EXPECT_THROW(resolve_workers(8, 6), UsageError);
  ::unsetenv("DLL_THREADS");
}

TEST(Sweep, SummaryRefusesBadRows) {
  SweepRow a, b;
  a.config_hash = "x";
  b.config_hash = "y";
  a.epsilon = 0.1;
  b.epsilon = 0.05;
  EXPECT_THROW(summarize({a, b}), UsageError);
  b.config_hash = "x";
  b.epsilon = 0.1;
  EXPECT_THROW(summarize({a, b}), UsageError);
}
