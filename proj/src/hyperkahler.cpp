#include "hkcp/hyperkahler.hpp"

#include <cmath>

#include "hkcp/fd.hpp"

namespace hkcp {

namespace {

const Complex kI(0.0, 1.0);

CMatrix gram_matrix(const CMatrix& a) {
    const auto m = a.rows();
    CMatrix g = CMatrix::Zero(2 * m, 2 * m);
    g.topRightCorner(m, m) = 0.5 * a;
    g.bottomLeftCorner(m, m) = 0.5 * a.transpose();
    return g;
}

}  // namespace

CMatrix symplectic_unit(int n) {
    CMatrix s = CMatrix::Zero(2 * n, 2 * n);
    s.topRightCorner(n, n) = CMatrix::Identity(n, n);
    s.bottomLeftCorner(n, n) = -CMatrix::Identity(n, n);
    return s;
}

ACSTriple build_triple(const CMatrix& a) {
    if (a.rows() != a.cols() || a.rows() % 2 != 0)
        throw DimensionError("build_triple: matrix must be square of even size");
    const int n = static_cast<int>(a.rows()) / 2;
    const CMatrix s = symplectic_unit(n);
    const CMatrix s_inv = -s;
    const CMatrix a_inv = dense_inverse(a);
    const auto m = a.rows();

    ACSTriple t;
    t.I = CMatrix::Zero(2 * m, 2 * m);
    t.I.topLeftCorner(m, m) = kI * CMatrix::Identity(m, m);
    t.I.bottomRightCorner(m, m) = -kI * CMatrix::Identity(m, m);

    t.J = CMatrix::Zero(2 * m, 2 * m);
    t.J.topRightCorner(m, m) = a_inv.transpose() * s_inv;
    t.J.bottomLeftCorner(m, m) = a_inv * s_inv;

    t.K = CMatrix::Zero(2 * m, 2 * m);
    t.K.topRightCorner(m, m) = -kI * s * a;
    t.K.bottomLeftCorner(m, m) = kI * s * a.transpose();
    return t;
}

CMatrix symplectic_defect(const CMatrix& a) {
    if (a.rows() != a.cols() || a.rows() % 2 != 0)
        throw DimensionError("symplectic_defect: matrix must be square of even size");
    const CMatrix s = symplectic_unit(static_cast<int>(a.rows()) / 2);
    return a.transpose() * s * a - s;
}

OmegaForms omega_constant_forms(int n) {
    const CMatrix s = symplectic_unit(n);
    const auto m = s.rows();
    OmegaForms out;
    out.omega_j = CMatrix::Zero(2 * m, 2 * m);
    out.omega_j.topLeftCorner(m, m) = 0.5 * s;
    out.omega_j.bottomRightCorner(m, m) = 0.5 * s;
    out.omega_k = CMatrix::Zero(2 * m, 2 * m);
    out.omega_k.topLeftCorner(m, m) = -0.5 * kI * s;
    out.omega_k.bottomRightCorner(m, m) = 0.5 * kI * s;
    return out;
}

CMatrix omega_i_matrix(const CMatrix& a) {
    const auto m = a.rows();
    CMatrix out = CMatrix::Zero(2 * m, 2 * m);
    out.topRightCorner(m, m) = 0.5 * kI * a;
    out.bottomLeftCorner(m, m) = -0.5 * kI * a.transpose();
    return out;
}

DefectRoutes symplectic_defect_routes(const ChartPoint& p, const MetricProfile& profile,
                                      const ModelParams& params) {
    const int n = params.n;
    const TauJet jet = tau_jet(p, params);
    const ProfileValue pv = profile_eval(jet.tau, profile);
    const CMatrix s = symplectic_unit(n);

    const CMatrix a_hess = jet.hess;                       // A'
    const CMatrix a_outer = jet.grad * jet.grad.adjoint();  // A'' = b b^*
    const CMatrix a_full = pv.f * a_hess + pv.fprime * a_outer;

    DefectRoutes out;
    out.direct = a_full.transpose() * s * a_full - s;
    out.rank_one_defect = (a_outer.transpose() * s * a_outer).norm();

    // Closed-form blocks of A'^T S A' and of W = A'^T S A''. All outer
    // products are written against column z and row xi.
    const CVector& z = p.z;
    const CRowVector& xi = p.xi;
    const CVector zbar = z.conjugate();
    const CRowVector xibar = xi.conjugate();
    const CVector xi_col = xi.transpose();        // entries xi_i
    const CVector xi_star = xi.adjoint();         // entries conj(xi_i)
    const CRowVector z_row = z.transpose();       // entries z_i
    const CRowVector z_star = z.adjoint();        // entries conj(z_i)

    const double psi1 = z.squaredNorm() + 1.0;
    const Complex xiz = (xi * z).value();
    const Complex s_shift = params.s - xiz;
    const double psi2 = xi.squaredNorm() + std::norm(s_shift);
    const Complex s_bar = std::conj(params.s);
    const double xi_sq = xi.squaredNorm();
    const Complex q = psi2 - s_shift * std::conj(xiz) + xi_sq;

    CMatrix asa = CMatrix::Zero(2 * n, 2 * n);  // A'^T S A'
    asa.topLeftCorner(n, n) =
        (s_shift * std::conj(xiz) - xi_sq) * (z * xibar - xi_star * z_row);
    asa.topRightCorner(n, n) = psi1 * psi2 * CMatrix::Identity(n, n) -
                               psi1 * s_shift * (xi_star * z_star) +
                               s_bar * s_shift * (z * z_star) + psi1 * (xi_star * xi) -
                               s_bar * (z * xi);
    asa.bottomLeftCorner(n, n) = -asa.topRightCorner(n, n).transpose();
    // The (2,2)-block vanishes identically.

    CMatrix w = CMatrix::Zero(2 * n, 2 * n);  // A'^T S A''
    w.topLeftCorner(n, n) = -s_shift * psi1 * psi1 * q * (xi_star * xibar) -
                            s_bar * psi2 * psi2 * (z * z_row) +
                            psi1 * psi2 * q * (xi_star * z_row) +
                            s_bar * s_shift * psi1 * psi2 * (z * xibar);
    w.topRightCorner(n, n) =
        psi1 * (psi1 * q * (xi_star * xi) + s_bar * s_shift * psi2 * (z * z_star) -
                s_bar * psi2 * (z * xi) - s_shift * psi1 * q * (xi_star * z_star));
    w.bottomLeftCorner(n, n) =
        s_bar * psi1 *
        (-s_shift * psi1 * (xi_col * xibar) - s_shift * psi2 * (zbar * z_row) +
         psi2 * (xi_col * z_row) + s_shift * s_shift * psi1 * (zbar * xibar));
    w.bottomRightCorner(n, n) =
        s_bar * psi1 * psi1 *
        (xi_col * xi + s_shift * s_shift * (zbar * z_star) - s_shift * (zbar * xi) -
         s_shift * (xi_col * z_star));

    const double c = pv.f;
    const double c1 = pv.fprime;
    out.blockwise = c * c * asa + c * c1 * (w - w.transpose()) - s;
    return out;
}

ChartPoint defect_witness_point(const ModelParams& params) {
    const int n = params.n;
    static const Complex base[3] = {{0.3, 0.0}, {0.0, 0.2}, {-0.2, 0.0}};
    CVector z(n);
    CRowVector xi(n);
    for (int i = 0; i < n; ++i) z[i] = base[i % 3];
    for (int i = 0; i < n; ++i) xi[i] = 0.25 * params.s;
    return ChartPoint{n, z, xi};
}

HermiticityReport hermiticity_check(const CMatrix& a, const ACSTriple& triple,
                                    double pass_tol, double gate_tol) {
    const CMatrix g = gram_matrix(a);
    const double scale = std::max(1.0, g.norm());
    HermiticityReport report;

    report.i_defect = (triple.I.transpose() * g * triple.I - g).norm();
    report.i_status =
        report.i_defect < pass_tol * scale ? CheckStatus::passed : CheckStatus::failed;

    if (symplectic_defect(a).norm() > gate_tol) {
        report.j_status = CheckStatus::skipped;
        report.k_status = CheckStatus::skipped;
        return report;
    }
    report.j_defect = (triple.J.transpose() * g * triple.J - g).norm();
    report.j_status =
        report.j_defect < pass_tol * scale ? CheckStatus::passed : CheckStatus::failed;
    report.k_defect = (triple.K.transpose() * g * triple.K - g).norm();
    report.k_status =
        report.k_defect < pass_tol * scale ? CheckStatus::passed : CheckStatus::failed;
    return report;
}

KahlerPotentialResult kahler_potential_check(const ChartPoint& p, const ModelParams& params,
                                             double step) {
    MetricProfile profile = make_profile(0.0, params);
    KahlerPotentialResult out;
    out.analytic = metric_matrix(p, profile, params).A;
    const ScalarField sqrt_tau = [&](const CVector& coords) {
        return std::sqrt(tau_local(unstack_coords(coords, p.alpha), params));
    };
    out.fd = 2.0 * fd_mixed_hessian(sqrt_tau, stack_coords(p), step);
    return out;
}

}  // namespace hkcp
