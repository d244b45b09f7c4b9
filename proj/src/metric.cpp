#include "hkcp/metric.hpp"

#include <cmath>

#include "hkcp/fd.hpp"

namespace hkcp {

MetricProfile make_profile(double a, const ModelParams& params) {
    if (a < 0.0) throw Error("profile: the family parameter a must be >= 0");
    MetricProfile profile;
    profile.a = a;
    profile.n = params.n;
    profile.tau0 = params.tau0;
    profile.eps_exclusion = 1e-3 * params.tau0;
    return profile;
}

ProfileValue profile_eval(double tau, const MetricProfile& profile) {
    ProfileValue out;
    switch (profile.kind) {
        case ProfileKind::constant_one:
            out = ProfileValue{1.0, 0.0};
            break;
        case ProfileKind::ricci_flat: {
            if (!(tau > 0.0)) throw DomainError("profile: tau must be positive");
            if (profile.a == 0.0) {
                out.f = 1.0 / std::sqrt(tau);
                out.fprime = -0.5 * std::pow(tau, -1.5);
                break;
            }
            const double r = tau - profile.tau0;
            if (r < profile.eps_exclusion)
                throw DomainError("profile: tau is inside the exclusion band around tau0");
            const int n = profile.n;
            const double rn = std::pow(r, n);
            const double radicand = profile.a + rn;
            const double p = std::pow(radicand, 1.0 / n);
            out.f = std::sqrt(p / (tau * r));
            // Logarithmic derivative of the closed form.
            out.fprime = 0.5 * out.f *
                         (std::pow(r, n - 1) / radicand - (2.0 * tau - profile.tau0) / (tau * r));
            break;
        }
    }
    out.f *= 1.0 + profile.perturbation;
    out.fprime *= 1.0 + profile.perturbation;
    return out;
}

TauJet tau_jet(const ChartPoint& p, const ModelParams& params) {
    const int n = params.n;
    const CVector& z = p.z;
    const CRowVector& xi = p.xi;
    const CVector zbar = z.conjugate();
    const CRowVector xibar = xi.conjugate();

    const double base_factor = z.squaredNorm() + 1.0;
    const Complex s_shift = params.s - (xi * z).value();
    const double fiber_factor = xi.squaredNorm() + std::norm(s_shift);
    const Complex s_shift_bar = std::conj(s_shift);

    TauJet jet;
    jet.tau = base_factor * fiber_factor;

    jet.grad = CVector(2 * n);
    jet.grad.head(n) = fiber_factor * zbar - base_factor * s_shift_bar * xi.transpose();
    jet.grad.tail(n) = base_factor * (xibar.transpose() - s_shift_bar * z);
    jet.gradbar = jet.grad.conjugate();

    jet.hess = CMatrix(2 * n, 2 * n);
    jet.hess.topLeftCorner(n, n) =
        fiber_factor * CMatrix::Identity(n, n) - s_shift * (zbar * xibar) -
        s_shift_bar * (xi.transpose() * z.transpose()) + base_factor * (xi.transpose() * xibar);
    jet.hess.topRightCorner(n, n) =
        base_factor * (xi.transpose() * z.adjoint()) + zbar * xi - s_shift * (zbar * z.adjoint());
    jet.hess.bottomLeftCorner(n, n) =
        base_factor * (z * xibar) + xi.adjoint() * z.transpose() - s_shift_bar * (z * z.transpose());
    jet.hess.bottomRightCorner(n, n) =
        base_factor * (CMatrix::Identity(n, n) + z * z.adjoint());
    return jet;
}

MetricMatrix metric_matrix(const ChartPoint& p, const MetricProfile& profile,
                           const ModelParams& params) {
    const TauJet jet = tau_jet(p, params);
    const ProfileValue pv = profile_eval(jet.tau, profile);
    CMatrix a = pv.f * jet.hess + pv.fprime * (jet.grad * jet.grad.adjoint());
    return MetricMatrix{std::move(a), p, profile};
}

double ode_residual(double f, double fprime, double tau, const MetricProfile& profile) {
    const int n = profile.n;
    const double tau0 = profile.tau0;
    return 2.0 * fprime * std::pow(f, 2 * n - 1) * std::pow(tau, n) * (tau - tau0) +
           std::pow(f, 2 * n) * std::pow(tau, n - 1) * (2.0 * tau - tau0);
}

double det_closed_form(double tau, const MetricProfile& profile) {
    const ProfileValue pv = profile_eval(tau, profile);
    const int n = profile.n;
    const double tau0 = profile.tau0;
    return std::pow(pv.f, 2 * n) * std::pow(tau, n - 1) * (2.0 * tau - tau0) +
           std::pow(pv.f, 2 * n - 1) * pv.fprime * 2.0 * std::pow(tau, n) * (tau - tau0);
}

IdentityPair hessian_det_identity(const ChartPoint& p, const ModelParams& params) {
    const TauJet jet = tau_jet(p, params);
    const int n = params.n;
    IdentityPair out;
    out.lhs = dense_det(jet.hess).real();
    out.rhs = std::pow(jet.tau, n - 1) * (2.0 * jet.tau - params.tau0);
    return out;
}

IdentityPair gradient_det_identity(const ChartPoint& p, const ModelParams& params) {
    const TauJet jet = tau_jet(p, params);
    const int n = params.n;
    const Complex det = dense_det(jet.hess);
    const CMatrix hess_inv = dense_inverse(jet.hess);
    const Complex quad = (jet.grad.adjoint() * hess_inv * jet.grad).value();
    IdentityPair out;
    out.lhs = (det * quad).real();
    out.rhs = 2.0 * std::pow(jet.tau, n) * (jet.tau - params.tau0);
    return out;
}

double gradient_det_brute_force(const ChartPoint& p, const ModelParams& params) {
    const TauJet jet = tau_jet(p, params);
    Complex sum(0.0, 0.0);
    for (Eigen::Index k = 0; k < jet.hess.cols(); ++k) {
        CMatrix replaced = jet.hess;
        replaced.col(k) = jet.grad;
        sum += jet.gradbar[k] * dense_det(replaced);
    }
    return sum.real();
}

CMatrix ricci_form_fd(const ChartPoint& p, const MetricProfile& profile,
                      const ModelParams& params, double step) {
    const ScalarField log_det = [&](const CVector& coords) {
        const ChartPoint q = unstack_coords(coords, p.alpha);
        const MetricMatrix mm = metric_matrix(q, profile, params);
        const double det = dense_det(mm.A).real();
        if (!(det > 0.0))
            throw DomainError("ricci_form_fd: det A is not positive on the stencil");
        return std::log(det);
    };
    return fd_mixed_hessian(log_det, stack_coords(p), step);
}

}  // namespace hkcp
