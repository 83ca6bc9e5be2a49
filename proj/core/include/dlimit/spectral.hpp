#pragma once

#include <array>
#include <functional>

#include "dlimit/fields.hpp"

namespace dlimit {

/// Exact derivatives of the trigonometric interpolant.
VectorField grad(const ScalarField& f);
ScalarField div(const VectorField& v);
VectorField curl(const VectorField& v);
ScalarField partial(const ScalarField& f, int axis);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

/// The antisymmetric matrices B_1, B_2, B_3 of the Maxwell block, with
/// sum_i B_i d_i v = -curl v.
using Mat3 = std::array<std::array<double, 3>, 3>;
const std::array<Mat3, 3>& maxwell_matrices();

/// curl assembled as sum_i B_i^T d_i v from the matrices above.
VectorField curl_via_B(const VectorField& v);

/// 2/3 rule: zero every mode with some |k_i| > n/3.
ScalarField dealias(ScalarField f);
VectorField dealias(VectorField v);

/// Discrete H^s norm: (2 pi)^3 sum_k (1 + |k|^2)^s |f_k|^2, square-rooted.
/// The integral is over the whole 3-torus for every active_dims.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const VectorField& v, double s);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);

/// Integral over T^3 and L^2 inner products.
double integrate(const ScalarField& f);
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);

/// Orthogonal projection onto divergence-free fields (keeps the mean).
VectorField leray_project(const VectorField& v);

/// Mean-free solution of laplacian(phi) = f (mean of f is ignored).
ScalarField inverse_laplacian(const ScalarField& f);

/// Multiply each coefficient by m(|k|^2).
ScalarField apply_radial_multiplier(ScalarField f, const std::function<double(double)>& m);
VectorField apply_radial_multiplier(VectorField v, const std::function<double(double)>& m);

}  // namespace dlimit
