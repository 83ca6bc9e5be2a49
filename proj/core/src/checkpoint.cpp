#include "dlimit/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <vector>

#include "dlimit/errors.hpp"

namespace dlimit {

namespace {

using json = nlohmann::json;
constexpr const char* kFormat = "dlimit-checkpoint";
constexpr int kVersion = 1;

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes little-endian");

struct Header {
  std::string kind;
  int n = 0, dims = 0;
  double t = 0.0;
  std::vector<std::string> fields;
};

void write(const std::string& path, const std::string& kind, const TorusGrid& grid, double t,
           const std::vector<std::pair<std::string, const ScalarField*>>& comps,
           const std::string& hash) {
  json h;
  h["format"] = kFormat;
  h["version"] = kVersion;
  h["kind"] = kind;
  h["grid"] = {{"n", grid.n()}, {"active_dims", grid.active_dims()}, {"length", TorusGrid::kLength}};
  h["t"] = t;
  h["samples"] = grid.size();
  h["config_hash"] = hash;
  json names = json::array();
  for (const auto& c : comps) names.push_back(c.first);
  h["fields"] = names;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("checkpoint: cannot write '" + path + "'");
  out << h.dump() << '\n';
  for (const auto& c : comps) {
    const auto p = c.second->phys();
    out.write(reinterpret_cast<const char*>(p.data()),
              static_cast<std::streamsize>(p.size() * sizeof(double)));
  }
  if (!out) throw UsageError("checkpoint: write to '" + path + "' failed");
}

template <class Fill>
void read(const std::string& path, const std::string& kind, const std::vector<std::string>& names,
          Fill&& fill) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("checkpoint: cannot read '" + path + "'");
  std::string line;
  std::getline(in, line);
  json h;
  try {
    h = json::parse(line);
  } catch (const json::exception& e) {
    throw UsageError("checkpoint: bad header in '" + path + "': " + e.what());
  }
  if (h.value("format", "") != kFormat || h.value("version", 0) != kVersion)
    throw UsageError("checkpoint: '" + path + "' has an unknown format");
  if (h.value("kind", "") != kind)
    throw UsageError("checkpoint: '" + path + "' holds a " + h.value("kind", "?") + " state");
  if (h["fields"].get<std::vector<std::string>>() != names)
    throw UsageError("checkpoint: unexpected field list in '" + path + "'");
  const TorusGrid grid(h["grid"]["n"].get<int>(), h["grid"]["active_dims"].get<int>());
  if (h["samples"].get<std::size_t>() != grid.size())
    throw UsageError("checkpoint: sample count does not match the grid");

  std::vector<std::vector<double>> data(names.size(), std::vector<double>(grid.size()));
  for (auto& d : data) {
    in.read(reinterpret_cast<char*>(d.data()), static_cast<std::streamsize>(d.size() * sizeof(double)));
    if (!in) throw UsageError("checkpoint: '" + path + "' is truncated");
  }
  fill(grid, h["t"].get<double>(), data);
}

void load(ScalarField& f, const std::vector<double>& d) {
  auto p = f.mutable_phys();
  std::memcpy(p.data(), d.data(), d.size() * sizeof(double));
}

const std::vector<std::string> kEmFields{"p", "u1", "u2", "u3", "S", "E1", "E2", "E3", "H1", "H2", "H3"};
const std::vector<std::string> kMhdFields{"p", "u1", "u2", "u3", "S", "H1", "H2", "H3"};

}  // namespace

void write_checkpoint(const std::string& path, const EmState& s, const std::string& hash) {
  write(path, "euler-maxwell", s.grid(), s.t,
        {{"p", &s.p}, {"u1", &s.u[0]}, {"u2", &s.u[1]}, {"u3", &s.u[2]}, {"S", &s.S},
         {"E1", &s.E[0]}, {"E2", &s.E[1]}, {"E3", &s.E[2]},
         {"H1", &s.H[0]}, {"H2", &s.H[1]}, {"H3", &s.H[2]}},
        hash);
}

void write_checkpoint(const std::string& path, const MhdState& s, const std::string& hash) {
  write(path, "mhd", s.grid(), s.t,
        {{"p", &s.p}, {"u1", &s.u[0]}, {"u2", &s.u[1]}, {"u3", &s.u[2]}, {"S", &s.S},
         {"H1", &s.H[0]}, {"H2", &s.H[1]}, {"H3", &s.H[2]}},
        hash);
}

EmState read_em_checkpoint(const std::string& path) {
  std::optional<EmState> out;
  read(path, "euler-maxwell", kEmFields,
       [&](const TorusGrid& g, double t, const std::vector<std::vector<double>>& d) {
         EmState s(g);
         ScalarField* slots[] = {&s.p, &s.u[0], &s.u[1], &s.u[2], &s.S, &s.E[0],
                                 &s.E[1], &s.E[2], &s.H[0], &s.H[1], &s.H[2]};
         for (std::size_t i = 0; i < d.size(); ++i) load(*slots[i], d[i]);
         s.t = t;
         out.emplace(std::move(s));
       });
  return std::move(*out);
}

MhdState read_mhd_checkpoint(const std::string& path) {
  std::optional<MhdState> out;
  read(path, "mhd", kMhdFields,
       [&](const TorusGrid& g, double t, const std::vector<std::vector<double>>& d) {
         MhdState s(g);
         ScalarField* slots[] = {&s.p, &s.u[0], &s.u[1], &s.u[2], &s.S, &s.H[0], &s.H[1], &s.H[2]};
         for (std::size_t i = 0; i < d.size(); ++i) load(*slots[i], d[i]);
         s.t = t;
         out.emplace(std::move(s));
       });
  return std::move(*out);
}

}  // namespace dlimit
