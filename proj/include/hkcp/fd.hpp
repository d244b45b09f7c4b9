#pragma once

#include <functional>

#include "hkcp/charts.hpp"

namespace hkcp {

/// Real scalar field over stacked chart coordinates (z_1..z_n, xi_1..xi_n).
using ScalarField = std::function<double(const CVector&)>;

/// Stack (z, xi) into one 2n-vector under the convention that the fiber
/// coordinates occupy slots n..2n-1.
CVector stack_coords(const ChartPoint& p);

/// Inverse of stack_coords.
ChartPoint unstack_coords(const CVector& coords, int alpha);

struct WirtingerGradient {
    CVector holo;  // d/dz_k
    CVector anti;  // d/dzbar_k
};

/// Central finite differences combined into Wirtinger derivatives
/// d_k = (d/dx_k - i d/dy_k)/2, dbar_k = (d/dx_k + i d/dy_k)/2.
/// Steps scale as step * max(1, |coordinate|).
WirtingerGradient fd_gradient(const ScalarField& fn, const CVector& point,
                              double step = 1e-5);

/// Matrix of mixed Wirtinger second derivatives d_j dbar_k fn via central
/// differences on the underlying real coordinates.
CMatrix fd_mixed_hessian(const ScalarField& fn, const CVector& point,
                         double step = 1e-4);

/// 5-point central first derivative of a complex-valued path value.
/// samples = {f(t-2h), f(t-h), f(t+h), f(t+2h)}.
Complex fd_path_derivative(const std::array<Complex, 4>& samples, double step);

}  // namespace hkcp
