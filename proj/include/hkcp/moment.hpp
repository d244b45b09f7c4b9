#pragma once

#include "hkcp/charts.hpp"

namespace hkcp {

/// The trace-form dual of the twisting character: (s / (n+1)) diag(1_n, -n).
/// Traceless by construction.
CMatrix character_dual(const ModelParams& params);

/// Holomorphic moment map at p, valued in sl(n+1, C) via the trace form:
/// g * character_dual * g^{-1} with g = sigma_alpha u_z u^-_w, w = -xi / s.
/// Its spectrum is {s/(n+1) (n-fold), -n s/(n+1)} at every point.
CMatrix moment_plus(const ChartPoint& p, const ModelParams& params);

/// Antiholomorphic moment map: the negative conjugate transpose of moment_plus.
CMatrix moment_minus(const ChartPoint& p, const ModelParams& params);

/// The invariant function tau computed from the moment map:
/// tr(mu mu^*) + |s|^2 / (n+1). Real, >= tau0 everywhere.
double tau_global(const ChartPoint& p, const ModelParams& params);

/// The invariant function tau in chart coordinates:
/// (||z||^2 + 1)(||xi||^2 + |s - xi z|^2).
double tau_local(const ChartPoint& p, const ModelParams& params);

/// The point of the minimum locus over z: xi = s z^* / (1 + ||z||^2).
/// tau at the result equals tau0 up to roundoff.
ChartPoint lagrangian_point(const CVector& z, int alpha, const ModelParams& params);

}  // namespace hkcp
