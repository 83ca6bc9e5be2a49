#include "dlimit/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dlimit/errors.hpp"

namespace dlimit {

namespace {

using Tree = boost::property_tree::ptree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"grid", {"n", "active_dims"}},
      {"eos", {"gamma", "p_floor", "S_floor"}},
      {"sweep",
       {"epsilons", "t_final", "cfl", "dt", "snapshot_every", "s_list", "gamma_s", "scheme"}},
      {"ic", {"recipe", "amp", "perturb_amp", "seed"}},
      {"output", {"dir"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& v, const char* want) {
  throw UsageError("config: " + key + " = '" + v + "' is not " + want);
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    bad_value(key, v, "a number");
  }
  if (pos != v.size() || !std::isfinite(x)) bad_value(key, v, "a finite number");
  return x;
}

long long to_int(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    bad_value(key, v, "an integer");
  }
  if (pos != v.size()) bad_value(key, v, "an integer");
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  std::size_t pos = 0;
  unsigned long long x = 0;
  if (!v.empty() && v[0] == '-') bad_value(key, v, "an unsigned integer");
  try {
    x = std::stoull(v, &pos);
  } catch (const std::exception&) {
    bad_value(key, v, "an unsigned integer");
  }
  if (pos != v.size()) bad_value(key, v, "an unsigned integer");
  return x;
}

std::vector<double> to_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
  if (out.empty()) bad_value(key, raw, "a comma-separated list");
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string scheme_name(EmScheme s) {
  switch (s) {
    case EmScheme::exponential: return "exponential";
    case EmScheme::strang: return "strang";
    case EmScheme::explicit_rk3: return "explicit_rk3";
  }
  return "unknown";
}

EmScheme parse_scheme(const std::string& name) {
  if (name == "exponential") return EmScheme::exponential;
  if (name == "strang") return EmScheme::strang;
  if (name == "explicit_rk3") return EmScheme::explicit_rk3;
  throw UsageError("unknown scheme '" + name + "' (exponential, strang, explicit_rk3)");
}

void ExperimentConfig::validate() const {
  if (n < 8 || (n & (n - 1)) != 0) throw UsageError("config: grid.n must be a power of two >= 8");
  if (active_dims < 1 || active_dims > 3) throw UsageError("config: grid.active_dims must be 1, 2 or 3");
  if (!(gamma > 1.0)) throw UsageError("config: eos.gamma must exceed 1");
  if (!(p_floor > 0.0) || !(S_floor > 0.0)) throw UsageError("config: eos floors must be positive");
  if (epsilons.empty()) throw UsageError("config: sweep.epsilons is empty");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw UsageError("config: sweep.epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw UsageError("config: sweep.epsilons must be strictly decreasing");
  }
  if (!(t_final > 0.0)) throw UsageError("config: sweep.t_final must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw UsageError("config: sweep.cfl must lie in (0, 1]");
  if (!(dt >= 0.0)) throw UsageError("config: sweep.dt must be >= 0 (0 = automatic)");
  if (snapshot_every < 1) throw UsageError("config: sweep.snapshot_every must be >= 1");
  for (double s : {0.0, 2.0, 4.0}) {
    bool found = false;
    for (double x : s_list) found = found || x == s;
    if (!found) throw UsageError("config: sweep.s_list must contain 0, 2 and 4");
  }
  for (double s : s_list)
    if (!(s >= 0.0)) throw UsageError("config: sweep.s_list entries must be >= 0");
  bool has_gamma_s = false;
  for (double x : s_list) has_gamma_s = has_gamma_s || x == gamma_s;
  if (!has_gamma_s) throw UsageError("config: sweep.gamma_s must be one of sweep.s_list");
  if (recipe != "default") throw UsageError("config: ic.recipe '" + recipe + "' is unknown");
  if (!(amp >= 0.0 && amp < 0.5)) throw UsageError("config: ic.amp must lie in [0, 0.5)");
  if (!(perturb_amp >= 0.0)) throw UsageError("config: ic.perturb_amp must be >= 0");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "n=" << n << ";dims=" << active_dims << ";gamma=" << fmt(gamma)
     << ";p_floor=" << fmt(p_floor) << ";S_floor=" << fmt(S_floor) << ";eps=";
  for (double e : epsilons) os << fmt(e) << ',';
  os << ";t_final=" << fmt(t_final) << ";cfl=" << fmt(cfl) << ";dt=" << fmt(dt)
     << ";snap=" << snapshot_every << ";s=";
  for (double s : s_list) os << fmt(s) << ',';
  os << ";gamma_s=" << fmt(gamma_s) << ";scheme=" << scheme_name(scheme) << ";recipe=" << recipe
     << ";amp=" << fmt(amp) << ";perturb=" << fmt(perturb_amp) << ";seed=" << seed;
  return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a(canonical()); }

std::string ExperimentConfig::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

ExperimentConfig parse_config(std::istream& in) {
  Tree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }

  ExperimentConfig c;
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (body.empty() || it == schema().end())
      throw UsageError("config: unknown section or key outside a section: '" + section + "'");
    for (const auto& [key, node] : body) {
      const std::string full = section + "." + key;
      if (!it->second.count(key)) throw UsageError("config: unknown key '" + full + "'");
      // Values never contain ';' or '#', so anything after one is a comment.
      const std::string raw = node.data();
      const std::string v = trim(raw.substr(0, raw.find_first_of(";#")));
      if (full == "grid.n") c.n = static_cast<int>(to_int(full, v));
      else if (full == "grid.active_dims") c.active_dims = static_cast<int>(to_int(full, v));
      else if (full == "eos.gamma") c.gamma = to_double(full, v);
      else if (full == "eos.p_floor") c.p_floor = to_double(full, v);
      else if (full == "eos.S_floor") c.S_floor = to_double(full, v);
      else if (full == "sweep.epsilons") c.epsilons = to_list(full, v);
      else if (full == "sweep.t_final") c.t_final = to_double(full, v);
      else if (full == "sweep.cfl") c.cfl = to_double(full, v);
      else if (full == "sweep.dt") c.dt = to_double(full, v);
      else if (full == "sweep.snapshot_every") c.snapshot_every = static_cast<int>(to_int(full, v));
      else if (full == "sweep.s_list") c.s_list = to_list(full, v);
      else if (full == "sweep.gamma_s") c.gamma_s = to_double(full, v);
      else if (full == "sweep.scheme") c.scheme = parse_scheme(v);
      else if (full == "ic.recipe") c.recipe = v;
      else if (full == "ic.amp") c.amp = to_double(full, v);
      else if (full == "ic.perturb_amp") c.perturb_amp = to_double(full, v);
      else if (full == "ic.seed") c.seed = to_u64(full, v);
      else if (full == "output.dir") c.output_dir = v;
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace dlimit
