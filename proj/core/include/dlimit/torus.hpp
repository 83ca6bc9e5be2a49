#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace dlimit {

using Complex = std::complex<double>;

namespace detail {
struct GridTables;
}

/// Uniform grid on the periodic box (R / 2 pi Z)^3.
///
/// The first `active_dims` axes carry n samples; the remaining axes carry a
/// single sample, so fields are invariant along them. Spectral coefficients use
/// the real-to-complex layout: the last active axis stores wavenumbers
/// 0..n/2, the other active axes store 0..n/2, -n/2+1..-1.
class TorusGrid {
 public:
  static constexpr double kLength = 2.0 * std::numbers::pi;
  static constexpr double kVolume = kLength * kLength * kLength;

  TorusGrid(int n, int active_dims);

  int n() const noexcept { return n_; }
  int active_dims() const noexcept { return active_dims_; }
  double spacing() const noexcept { return kLength / n_; }

  const std::array<int, 3>& shape() const noexcept;
  const std::array<int, 3>& spec_shape() const noexcept;
  std::size_t size() const noexcept;
  std::size_t spec_size() const noexcept;

  std::size_t index(int i0, int i1, int i2) const noexcept {
    const auto& s = shape();
    return (static_cast<std::size_t>(i0) * s[1] + i1) * s[2] + i2;
  }
  double coordinate(int i) const noexcept { return spacing() * i; }

  /// Per-mode tables in the spectral layout.
  std::span<const double> wavenumber(int axis) const;
  /// Wavenumber used by first derivatives; the unpaired Nyquist mode maps to 0.
  std::span<const double> derivative_wavenumber(int axis) const;
  /// |k|^2 with true wavenumbers.
  std::span<const double> k_squared() const;
  /// Multiplicity of each stored mode in the full Hermitian spectrum (1 or 2).
  std::span<const double> hermitian_weight() const;
  /// 1 for modes that pass the 2/3 rule (every |k_i| <= n/3), else 0.
  std::span<const double> dealias_mask() const;

  /// Forward transform to normalised coefficients (1/N) sum f e^{-ikx}.
  void forward(std::span<const double> phys, std::span<Complex> spec) const;
  /// Inverse transform from normalised coefficients. `spec` is left untouched.
  void inverse(std::span<const Complex> spec, std::span<double> phys) const;

  bool operator==(const TorusGrid& other) const noexcept {
    return n_ == other.n_ && active_dims_ == other.active_dims_;
  }

 private:
  int n_;
  int active_dims_;
  std::shared_ptr<const detail::GridTables> tables_;
};

}  // namespace dlimit
