#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "dlimit/checkpoint.hpp"
#include "dlimit/csv.hpp"
#include "dlimit/errors.hpp"
#include "dlimit/initial_data.hpp"

using namespace dlimit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dlimit_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

SweepRow row(const std::string& hash, double eps) {
  SweepRow r;
  r.config_hash = hash;
  r.epsilon = eps;
  r.sup_norm_s0 = 1.5 * eps;
  r.sup_norm_s2 = 3.0 * eps;
  r.sup_norm_s4 = 9.0 * eps;
  r.sup_sqrt_eps_f_s0 = eps * std::sqrt(eps);
  r.sup_sqrt_eps_f_s2 = 2 * eps * std::sqrt(eps);
  r.sup_f_s0 = eps;
  r.sup_f_s2 = 2 * eps;
  r.damping = eps * eps / 3.0;
  r.sup_gamma = 0.1 * eps * eps;
  r.t_reached = 0.5;
  r.steps = 40;
  return r;
}

}  // namespace

TEST(Checkpoint, EmRoundTrip) {
  const MhdState b = default_background_ic(TorusGrid(16, 3), EosClosure{}, 0.1);
  EmState s = well_prepared_init(b, 0.05, 1.0, 8);
  s.t = 0.375;
  const auto path = scratch("em.ckpt").string();
  write_checkpoint(path, s, "abc");
  const EmState r = read_em_checkpoint(path);
  EXPECT_EQ(r.grid(), s.grid());
  EXPECT_EQ(r.t, s.t);
  EXPECT_EQ((r.p - s.p).max_abs(), 0.0);
  EXPECT_EQ((r.u - s.u).max_abs(), 0.0);
  EXPECT_EQ((r.S - s.S).max_abs(), 0.0);
  EXPECT_EQ((r.E - s.E).max_abs(), 0.0);
  EXPECT_EQ((r.H - s.H).max_abs(), 0.0);
}

TEST(Checkpoint, MhdRoundTripAndKindCheck) {
  const MhdState b = default_background_ic(TorusGrid(32, 2), EosClosure{}, 0.2);
  const auto path = scratch("mhd.ckpt").string();
  write_checkpoint(path, b);
  const MhdState r = read_mhd_checkpoint(path);
  EXPECT_EQ((r.H - b.H).max_abs(), 0.0);
  EXPECT_EQ((r.p - b.p).max_abs(), 0.0);
  EXPECT_THROW(read_em_checkpoint(path), UsageError);
}

TEST(Checkpoint, RejectsDamagedFiles) {
  const MhdState b = default_background_ic(TorusGrid(16, 2), EosClosure{}, 0.1);
  const auto path = scratch("cut.ckpt");
  write_checkpoint(path.string(), b);
  fs::resize_file(path, fs::file_size(path) - 8);
  EXPECT_THROW(read_mhd_checkpoint(path.string()), UsageError);
  std::ofstream(scratch("junk.ckpt")) << "not a checkpoint\n";
  EXPECT_THROW(read_mhd_checkpoint(scratch("junk.ckpt").string()), UsageError);
  EXPECT_THROW(read_mhd_checkpoint(scratch("missing.ckpt").string()), UsageError);
}

TEST(Csv, SeriesLayout) {
  const auto path = scratch("series.csv").string();
  SeriesRow r;
  r.t = 0.25;
  r.gamma = 1e-3;
  write_series_csv(path, "00ff", 0.05, {r, r});
  std::ifstream in(path);
  std::string first, header, line;
  std::getline(in, first);
  std::getline(in, header);
  EXPECT_EQ(first.rfind("# config_hash=00ff", 0), 0u);
  EXPECT_EQ(header,
            "t,norm_s0,norm_s2,norm_s4,weighted_s0,weighted_s2,f_norm_s0,damping_accum,gamma,"
            "min_p,min_S,div_H");
  int n = 0;
  while (std::getline(in, line)) ++n;
  EXPECT_EQ(n, 2);
  EXPECT_EQ(epsilon_tag(0.05), "0.05");
  EXPECT_EQ(epsilon_tag(2e-3), "0.002");
}

TEST(Csv, ReportRoundTripAndMerge) {
  std::vector<SweepRow> a{row("h1", 0.1), row("h1", 0.05)};
  std::vector<SweepRow> b{row("h1", 0.02), row("h1", 0.01)};
  const auto pa = scratch("ra.csv").string(), pb = scratch("rb.csv").string();
  SweepReport ra;
  ra.rows = a;
  SweepReport rb;
  rb.rows = b;
  write_sweep_report(pa, ra);
  write_sweep_report(pb, rb);
  const auto back = read_sweep_rows(pa);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].sup_sqrt_eps_f_s0, a[1].sup_sqrt_eps_f_s0);
  EXPECT_EQ(back[0].steps, 40);

  const SweepReport merged = merge_sweep_reports({pa, pb});
  ASSERT_EQ(merged.rows.size(), 4u);
  EXPECT_EQ(merged.rows.front().epsilon, 0.01);
  EXPECT_NEAR(merged.fit("norm_s0").slope, 1.0, 1e-12);
  EXPECT_NEAR(merged.fit("sqrt_eps_f_s0").slope, 1.5, 1e-12);
  EXPECT_NEAR(merged.fit("gamma").slope, 2.0, 1e-12);
  EXPECT_NEAR(merged.gamma_C, 0.1, 1e-15);
}

TEST(Csv, MergeRefusesMixedConfigs) {
  SweepReport ra, rb;
  ra.rows = {row("h1", 0.1), row("h1", 0.05)};
  rb.rows = {row("h2", 0.02)};
  const auto pa = scratch("ma.csv").string(), pb = scratch("mb.csv").string();
  write_sweep_report(pa, ra);
  write_sweep_report(pb, rb);
  EXPECT_THROW(merge_sweep_reports({pa, pb}), UsageError);
  EXPECT_THROW(merge_sweep_reports({pa, pa}), UsageError);
}
