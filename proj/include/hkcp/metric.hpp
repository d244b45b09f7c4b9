#pragma once

#include "hkcp/charts.hpp"
#include "hkcp/moment.hpp"

namespace hkcp {

enum class ProfileKind {
    ricci_flat,    // f(tau) = ((a + (tau - tau0)^n)^(1/n) / (tau (tau - tau0)))^(1/2)
    constant_one,  // f = 1, f' = 0; negative control, not Ricci-flat
};

/// Selects one member of the Ricci-flat family. For a > 0 the profile is
/// singular on the minimum locus of tau; evaluations inside the exclusion
/// band tau - tau0 < eps_exclusion raise DomainError. `perturbation` rescales
/// f and f' by (1 + perturbation) to drive negative controls.
struct MetricProfile {
    double a = 0.0;
    int n = 1;
    double tau0 = 1.0;
    double eps_exclusion = 1e-3;
    ProfileKind kind = ProfileKind::ricci_flat;
    double perturbation = 0.0;
};

MetricProfile make_profile(double a, const ModelParams& params);

struct ProfileValue {
    double f = 0.0;
    double fprime = 0.0;
};

/// Evaluates f and f'. f' comes from differentiating the closed form
/// directly, never from rearranging the defining ODE, so the ODE residual
/// stays an independent test.
ProfileValue profile_eval(double tau, const MetricProfile& profile);

/// First and second Wirtinger derivatives of tau in chart coordinates, under
/// the convention that index n+i refers to the fiber coordinate xi_i.
struct TauJet {
    double tau = 0.0;
    CVector grad;     // tau_i, i = 1..2n
    CVector gradbar;  // conj(tau_i)
    CMatrix hess;     // tau_{i, jbar}, Hermitian
};

TauJet tau_jet(const ChartPoint& p, const ModelParams& params);

/// The 2n x 2n Hermitian matrix of metric components
/// A = f(tau) hess + f'(tau) grad gradbar^T. det A = 1 across the family.
struct MetricMatrix {
    CMatrix A;
    ChartPoint point;
    MetricProfile profile;
};

MetricMatrix metric_matrix(const ChartPoint& p, const MetricProfile& profile,
                           const ModelParams& params);

/// Left side of the defining first-order ODE of the family:
/// 2 f' f^(2n-1) tau^n (tau - tau0) + f^(2n) tau^(n-1) (2 tau - tau0).
/// Equals 1 identically for every family member.
double ode_residual(double f, double fprime, double tau, const MetricProfile& profile);

/// det A assembled from the two closed-form determinant identities:
/// f^(2n) tau^(n-1)(2 tau - tau0) + f^(2n-1) f' 2 tau^n (tau - tau0).
double det_closed_form(double tau, const MetricProfile& profile);

struct IdentityPair {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Dense determinant of the tau-Hessian against tau^(n-1)(2 tau - tau0).
IdentityPair hessian_det_identity(const ChartPoint& p, const ModelParams& params);

/// The gradient-weighted column-replacement sum, evaluated in Cramer form
/// det(hess) gradbar^T hess^{-1} grad, against 2 tau^n (tau - tau0).
/// Throws SingularMatrixError on the measure-zero locus where hess degenerates.
IdentityPair gradient_det_identity(const ChartPoint& p, const ModelParams& params);

/// Same sum by literal column replacement: sum_k conj(tau_k) det(hess with
/// column k replaced by grad). Intended for small n as a brute-force check.
double gradient_det_brute_force(const ChartPoint& p, const ModelParams& params);

/// Mixed second finite differences of log det A. Entrywise zero (to stencil
/// accuracy) exactly when the profile has constant det A.
CMatrix ricci_form_fd(const ChartPoint& p, const MetricProfile& profile,
                      const ModelParams& params, double step = 1e-3);

}  // namespace hkcp
