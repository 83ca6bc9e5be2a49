// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Uses the built-in default configuration (identical to configs/default.ini).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dlimit/checks.hpp"
#include "dlimit/config.hpp"
#include "dlimit/mms.hpp"
#include "dlimit/sweep.hpp"

using namespace dlimit;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("aborted: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::printf("%s [%d] %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, title.c_str(),
              v.detail.c_str(), secs);
  std::fflush(stdout);
}

const CheckResult& find(const std::vector<CheckResult>& rs, const std::string& prefix) {
  for (const auto& r : rs)
    if (r.name.rfind(prefix, 0) == 0) return r;
  throw std::runtime_error("no check named '" + prefix + "'");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Names of files that differ between two output directories (both ways).
std::vector<std::string> differing(const fs::path& a, const fs::path& b) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(a)) {
    const fs::path other = b / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other))
      out.push_back(e.path().filename().string());
  }
  for (const auto& e : fs::directory_iterator(b))
    if (!fs::exists(a / e.path().filename())) out.push_back(e.path().filename().string());
  return out;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

}  // namespace

int main() {
  const ExperimentConfig cfg;
  const fs::path root = fs::temp_directory_path() / "dlimit_acceptance";
  fs::remove_all(root);
  std::printf("config %s, %d^%d grid, %zu epsilons\n", cfg.hash_hex().c_str(), cfg.n,
              cfg.active_dims, cfg.epsilons.size());

  const SweepReport sweep = sweep_epsilon(cfg, 1, (root / "sweep_w1").string());
  const auto rates = rate_checks(sweep);
  auto slope = [&](const char* m) { return sweep.fit(m).slope; };

  report(1, "sup ||(P,U,Phi,G)||_s slope in [0.85, 1.15]", [&] {
    const bool ok = find(rates, "slope of sup norm_s0").pass && find(rates, "slope of sup norm_s2").pass;
    return Verdict{ok, "s=0 " + fmt("%.4f", slope("norm_s0")) + ", s=2 " + fmt("%.4f", slope("norm_s2"))};
  });
  report(2, "sup sqrt(eps)||F||_s slope >= 0.85, raw ||F|| slope >= 0.4", [&] {
    const bool ok = find(rates, "slope of sup sqrt(eps) ||F||_0").pass &&
                    find(rates, "slope of sup sqrt(eps) ||F||_2").pass &&
                    find(rates, "slope of sup ||F||_0").pass && find(rates, "slope of sup ||F||_2").pass;
    return Verdict{ok, "weighted " + fmt("%.4f", slope("sqrt_eps_f_s0")) + " / " +
                           fmt("%.4f", slope("sqrt_eps_f_s2")) + ", raw " + fmt("%.4f", slope("f_s0")) +
                           " / " + fmt("%.4f", slope("f_s2"))};
  });
  report(3, "damping integral slope >= 1.7", [&] {
    return Verdict{find(rates, "slope of the damping integral").pass, fmt("%.4f", slope("damping"))};
  });
  report(4, "sup Gamma slope >= 1.7 and Gamma <= 10 C eps^2", [&] {
    const bool ok = find(rates, "slope of sup Gamma").pass && find(rates, "max sup Gamma").pass;
    return Verdict{ok, "slope " + fmt("%.4f", slope("gamma")) + ", C " + fmt("%.4g", sweep.gamma_C) +
                           ", max ratio " + fmt("%.3f", sweep.gamma_max_ratio)};
  });

  report(5, "structural identities within 60 s", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rs = structural_checks(cfg, cfg.seed);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string worst;
    for (const auto& r : rs)
      if (!r.pass) worst += (worst.empty() ? "" : "; ") + r.name + " = " + fmt("%.3e", r.value);
    const bool ok = all_pass(rs) && secs <= 60.0;
    return Verdict{ok, worst.empty() ? std::to_string(rs.size()) + " checks ok in " + fmt("%.1f s", secs)
                                     : worst};
  });
  report(6, "closure consistency over 1e4 states", [&] {
    const auto rs = eos_checks(cfg.eos(), cfg.seed, 10000);
    const CheckResult& fd = find(rs, "max relative |FD");
    const CheckResult& g = find(rs, "Gibbs");
    return Verdict{all_pass(rs), "coeff_a rel err " + fmt("%.2e", fd.value) + ", " + g.detail};
  });
  report(7, "MMS temporal order >= 1.9, spatial drop >= 50x", [&] {
    const MmsReport m = mms_verify(MmsConfig{});
    return Verdict{m.pass(1.9, 50.0), "euler-maxwell order " + fmt("%.3f", m.em.order) + " drop " +
                                          fmt("%.3g", m.em.spatial_drop) + ", mhd order " +
                                          fmt("%.3f", m.mhd.order) + " drop " +
                                          fmt("%.3g", m.mhd.spatial_drop)};
  });
  report(8, "error residual order >= 1.9 under dt halving at eps = 5e-2", [&] {
    const ResidualStudy rs = residual_convergence(cfg, 5e-2);
    std::string d = "order " + fmt("%.3f", rs.fit.slope) + ", residuals";
    for (double r : rs.residual) d += " " + fmt("%.2e", r);
    return Verdict{rs.fit.slope >= 1.9, d};
  });
  report(9, "bitwise-identical sweeps across repeats and worker counts", [&] {
    sweep_epsilon(cfg, 1, (root / "sweep_w1_again").string());
    sweep_epsilon(cfg, 3, (root / "sweep_w3").string());
    auto d1 = differing(root / "sweep_w1", root / "sweep_w1_again");
    auto d3 = differing(root / "sweep_w1", root / "sweep_w3");
    const std::size_t files =
        static_cast<std::size_t>(std::distance(fs::directory_iterator(root / "sweep_w1"), {}));
    std::string d = std::to_string(files) + " files compared";
    for (const auto& f : d1) d += ", repeat differs in " + f;
    for (const auto& f : d3) d += ", workers=3 differs in " + f;
    return Verdict{d1.empty() && d3.empty() && files == cfg.epsilons.size() + 1, d};
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
