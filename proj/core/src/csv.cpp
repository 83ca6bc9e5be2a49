#include "dlimit/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dlimit/errors.hpp"

namespace dlimit {

namespace {

constexpr const char* kReportHeader =
    "config_hash,epsilon,sup_norm_s0,sup_norm_s2,sup_norm_s4,sup_sqrt_eps_f_s0,"
    "sup_sqrt_eps_f_s2,sup_f_s0,sup_f_s2,damping_integral,sup_gamma,sup_div_H,sup_div_G,"
    "t_reached,steps";

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write '" + path + "'");
  return out;
}

}  // namespace

std::string epsilon_tag(double epsilon) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", epsilon);
  return buf;
}

void write_series_csv(const std::string& path, const std::string& config_hash, double epsilon,
                      const std::vector<SeriesRow>& rows) {
  std::ofstream out = open_out(path);
  out << "# config_hash=" << config_hash << " epsilon=" << num(epsilon) << '\n';
  out << kSeriesHeader << '\n';
  for (const auto& r : rows) {
    out << num(r.t) << ',' << num(r.norm_s0) << ',' << num(r.norm_s2) << ',' << num(r.norm_s4)
        << ',' << num(r.weighted_s0) << ',' << num(r.weighted_s2) << ',' << num(r.f_norm_s0)
        << ',' << num(r.damping_accum) << ',' << num(r.gamma) << ',' << num(r.min_p) << ','
        << num(r.min_S) << ',' << num(r.div_H) << '\n';
  }
}

void write_sweep_report(const std::string& path, const SweepReport& rep) {
  std::ofstream out = open_out(path);
  out << kReportHeader << '\n';
  for (const auto& r : rep.rows) {
    out << r.config_hash << ',' << num(r.epsilon) << ',' << num(r.sup_norm_s0) << ','
        << num(r.sup_norm_s2) << ',' << num(r.sup_norm_s4) << ',' << num(r.sup_sqrt_eps_f_s0)
        << ',' << num(r.sup_sqrt_eps_f_s2) << ',' << num(r.sup_f_s0) << ',' << num(r.sup_f_s2)
        << ',' << num(r.damping) << ',' << num(r.sup_gamma) << ',' << num(r.sup_div_H) << ','
        << num(r.sup_div_G) << ',' << num(r.t_reached) << ',' << r.steps << '\n';
  }
  out << "# fitted log-log slopes against epsilon\n";
  out << "# metric,slope,ci95_low,ci95_high,points,outlier\n";
  for (const auto& [name, f] : rep.fits) {
    out << "# " << name << ',' << num(f.slope) << ',' << num(f.ci_low) << ',' << num(f.ci_high)
        << ',' << f.used << ',' << (f.outlier ? "yes" : "no") << '\n';
  }
  out << "# gamma_bound,C=" << num(rep.gamma_C) << ",max_ratio=" << num(rep.gamma_max_ratio)
      << '\n';
  for (const auto& w : rep.warnings) out << "# warning: " << w << '\n';
}

std::vector<SweepRow> read_sweep_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader)
    throw UsageError("'" + path + "' is not a sweep report");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::vector<std::string> f;
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 15) throw UsageError("malformed row in '" + path + "': " + line);
    SweepRow r;
    r.config_hash = f[0];
    double* slots[] = {&r.epsilon,   &r.sup_norm_s0,       &r.sup_norm_s2, &r.sup_norm_s4,
                       &r.sup_sqrt_eps_f_s0, &r.sup_sqrt_eps_f_s2, &r.sup_f_s0, &r.sup_f_s2,
                       &r.damping,   &r.sup_gamma,         &r.sup_div_H,   &r.sup_div_G,
                       &r.t_reached};
    try {
      for (int i = 0; i < 13; ++i) *slots[i] = std::stod(f[1 + i]);
      r.steps = std::stoi(f[14]);
    } catch (const std::exception&) {
      throw UsageError("malformed number in '" + path + "': " + line);
    }
    rows.push_back(r);
  }
  return rows;
}

SweepReport merge_sweep_reports(const std::vector<std::string>& paths) {
  std::vector<SweepRow> all;
  for (const auto& p : paths) {
    auto rows = read_sweep_rows(p);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return summarize(std::move(all));
}

}  // namespace dlimit
