#include "dlimit/torus.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "dlimit/errors.hpp"

namespace dlimit {
namespace detail {

namespace {
// FFTW's planner is not thread-safe; execution with new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct GridTables {
  std::array<int, 3> shape{};
  std::array<int, 3> spec_shape{};
  std::size_t size = 0;
  std::size_t spec_size = 0;
  std::array<std::vector<double>, 3> k;
  std::array<std::vector<double>, 3> kd;
  std::vector<double> k2;
  std::vector<double> weight;
  std::vector<double> keep;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  GridTables(int n, int active_dims);
  ~GridTables() {
    std::lock_guard lock(planner_mutex());
    if (r2c != nullptr) fftw_destroy_plan(r2c);
    if (c2r != nullptr) fftw_destroy_plan(c2r);
  }
  GridTables(const GridTables&) = delete;
  GridTables& operator=(const GridTables&) = delete;
};

GridTables::GridTables(int n, int active_dims) {
  const int last = active_dims - 1;
  for (int a = 0; a < 3; ++a) {
    shape[a] = a < active_dims ? n : 1;
    spec_shape[a] = a < active_dims ? (a == last ? n / 2 + 1 : n) : 1;
  }
  size = static_cast<std::size_t>(shape[0]) * shape[1] * shape[2];
  spec_size = static_cast<std::size_t>(spec_shape[0]) * spec_shape[1] * spec_shape[2];

  for (auto& v : k) v.resize(spec_size);
  for (auto& v : kd) v.resize(spec_size);
  k2.resize(spec_size);
  weight.resize(spec_size);
  keep.resize(spec_size);

  const int half = n / 2;
  const double cutoff = n / 3.0;
  auto wave = [&](int axis, int i) -> int {
    if (axis >= active_dims) return 0;
    if (axis == last) return i;
    return i <= half ? i : i - n;
  };

  std::size_t m = 0;
  for (int i0 = 0; i0 < spec_shape[0]; ++i0) {
    for (int i1 = 0; i1 < spec_shape[1]; ++i1) {
      for (int i2 = 0; i2 < spec_shape[2]; ++i2, ++m) {
        const std::array<int, 3> idx{i0, i1, i2};
        double ksq = 0.0;
        bool pass = true;
        for (int a = 0; a < 3; ++a) {
          const int w = wave(a, idx[a]);
          k[a][m] = w;
          kd[a][m] = (std::abs(w) == half) ? 0.0 : static_cast<double>(w);
          ksq += static_cast<double>(w) * w;
          if (std::abs(w) > cutoff) pass = false;
        }
        k2[m] = ksq;
        keep[m] = pass ? 1.0 : 0.0;
        const int kl = idx[last];
        weight[m] = (kl == 0 || kl == half) ? 1.0 : 2.0;
      }
    }
  }

  std::array<int, 3> dims{n, n, n};
  std::vector<double> re(size);
  std::vector<Complex> co(spec_size);
  auto* cptr = reinterpret_cast<fftw_complex*>(co.data());
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  r2c = fftw_plan_dft_r2c(active_dims, dims.data(), re.data(), cptr, flags);
  c2r = fftw_plan_dft_c2r(active_dims, dims.data(), cptr, re.data(), flags);
  if (r2c == nullptr || c2r == nullptr) throw NumericalError("FFTW planning failed");
}

namespace {
// One table set per (n, active_dims); grids are immutable after construction.
std::shared_ptr<const GridTables> shared_tables(int n, int active_dims) {
  static std::mutex m;
  static std::map<std::pair<int, int>, std::weak_ptr<const GridTables>> cache;
  std::lock_guard lock(m);
  auto& slot = cache[{n, active_dims}];
  if (auto existing = slot.lock()) return existing;
  auto fresh = std::make_shared<const GridTables>(n, active_dims);
  slot = fresh;
  return fresh;
}
}  // namespace

}  // namespace detail

TorusGrid::TorusGrid(int n, int active_dims) : n_(n), active_dims_(active_dims) {
  if (n < 8 || (n & (n - 1)) != 0) {
    std::ostringstream os;
    os << "TorusGrid: n must be a power of two >= 8, got " << n;
    throw UsageError(os.str());
  }
  if (active_dims < 1 || active_dims > 3) {
    throw UsageError("TorusGrid: active_dims must be 1, 2 or 3");
  }
  tables_ = detail::shared_tables(n, active_dims);
}

const std::array<int, 3>& TorusGrid::shape() const noexcept { return tables_->shape; }
const std::array<int, 3>& TorusGrid::spec_shape() const noexcept {
  return tables_->spec_shape;
}
std::size_t TorusGrid::size() const noexcept { return tables_->size; }
std::size_t TorusGrid::spec_size() const noexcept { return tables_->spec_size; }

std::span<const double> TorusGrid::wavenumber(int axis) const { return tables_->k.at(axis); }
std::span<const double> TorusGrid::derivative_wavenumber(int axis) const {
  return tables_->kd.at(axis);
}
std::span<const double> TorusGrid::k_squared() const { return tables_->k2; }
std::span<const double> TorusGrid::hermitian_weight() const { return tables_->weight; }
std::span<const double> TorusGrid::dealias_mask() const { return tables_->keep; }

void TorusGrid::forward(std::span<const double> phys, std::span<Complex> spec) const {
  if (phys.size() != size() || spec.size() != spec_size()) {
    throw UsageError("TorusGrid::forward: buffer size mismatch");
  }
  // r2c leaves its input intact; the FFTW signature is just non-const.
  auto* in = const_cast<double*>(phys.data());
  fftw_execute_dft_r2c(tables_->r2c, in, reinterpret_cast<fftw_complex*>(spec.data()));
  const double scale = 1.0 / static_cast<double>(size());
  for (auto& c : spec) c *= scale;
}

void TorusGrid::inverse(std::span<const Complex> spec, std::span<double> phys) const {
  if (phys.size() != size() || spec.size() != spec_size()) {
    throw UsageError("TorusGrid::inverse: buffer size mismatch");
  }
  // c2r overwrites its input.
  std::vector<Complex> scratch(spec.begin(), spec.end());
  fftw_execute_dft_c2r(tables_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       phys.data());
}

}  // namespace dlimit
