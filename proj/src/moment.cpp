#include "hkcp/moment.hpp"

namespace hkcp {

CMatrix character_dual(const ModelParams& params) {
    const int n = params.n;
    CMatrix m = CMatrix::Identity(n + 1, n + 1);
    m(n, n) = Complex(-static_cast<double>(n), 0.0);
    return (params.s / Complex(n + 1, 0.0)) * m;
}

CMatrix moment_plus(const ChartPoint& p, const ModelParams& params) {
    const CRowVector w = -p.xi / params.s;
    const CMatrix sigma = weyl_representative(p.alpha, params.n).m;
    const CMatrix g = sigma * unipotent_upper(p.z).m * unipotent_lower(w).m;
    // g^{-1} assembled from exact block inverses; sigma is real orthogonal.
    const CMatrix g_inv =
        unipotent_lower(-w).m * unipotent_upper(-p.z).m * sigma.transpose();
    return g * character_dual(params) * g_inv;
}

CMatrix moment_minus(const ChartPoint& p, const ModelParams& params) {
    return -moment_plus(p, params).adjoint();
}

double tau_global(const ChartPoint& p, const ModelParams& params) {
    const CMatrix mu = moment_plus(p, params);
    return mu.squaredNorm() + std::norm(params.s) / (params.n + 1);
}

double tau_local(const ChartPoint& p, const ModelParams& params) {
    const double base_factor = p.z.squaredNorm() + 1.0;
    const Complex s_shift = params.s - (p.xi * p.z).value();
    const double fiber_factor = p.xi.squaredNorm() + std::norm(s_shift);
    return base_factor * fiber_factor;
}

ChartPoint lagrangian_point(const CVector& z, int alpha, const ModelParams& params) {
    const CRowVector xi = params.s * z.adjoint() / (1.0 + z.squaredNorm());
    return ChartPoint{alpha, z, xi};
}

}  // namespace hkcp
