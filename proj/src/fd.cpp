#include "hkcp/fd.hpp"

#include <array>
#include <cmath>

namespace hkcp {

namespace {

// Shift one real coordinate (the real or imaginary part of complex slot k).
CVector shifted(const CVector& point, Eigen::Index k, bool imag_part, double delta) {
    CVector out = point;
    out[k] += imag_part ? Complex(0.0, delta) : Complex(delta, 0.0);
    return out;
}

double coord_step(const CVector& point, Eigen::Index k, double step) {
    return step * std::max(1.0, std::abs(point[k]));
}

}  // namespace

CVector stack_coords(const ChartPoint& p) {
    const auto n = p.z.size();
    CVector out(2 * n);
    out.head(n) = p.z;
    out.tail(n) = p.xi.transpose();
    return out;
}

ChartPoint unstack_coords(const CVector& coords, int alpha) {
    const auto n = coords.size() / 2;
    return ChartPoint{alpha, coords.head(n), coords.tail(n).transpose()};
}

WirtingerGradient fd_gradient(const ScalarField& fn, const CVector& point, double step) {
    const auto m = point.size();
    WirtingerGradient g{CVector(m), CVector(m)};
    for (Eigen::Index k = 0; k < m; ++k) {
        const double h = coord_step(point, k, step);
        const double dx = (fn(shifted(point, k, false, h)) - fn(shifted(point, k, false, -h))) / (2.0 * h);
        const double dy = (fn(shifted(point, k, true, h)) - fn(shifted(point, k, true, -h))) / (2.0 * h);
        g.holo[k] = Complex(0.5 * dx, -0.5 * dy);
        g.anti[k] = Complex(0.5 * dx, 0.5 * dy);
    }
    return g;
}

CMatrix fd_mixed_hessian(const ScalarField& fn, const CVector& point, double step) {
    const auto m = point.size();
    const double f0 = fn(point);

    // Mixed second derivative in the real coordinates (slot a, part pa) and
    // (slot b, part pb); collapses to the 3-point stencil on the diagonal.
    auto second = [&](Eigen::Index a, bool pa, Eigen::Index b, bool pb) {
        const double ha = coord_step(point, a, step);
        const double hb = coord_step(point, b, step);
        if (a == b && pa == pb) {
            return (fn(shifted(point, a, pa, ha)) - 2.0 * f0 + fn(shifted(point, a, pa, -ha))) /
                   (ha * ha);
        }
        const double fpp = fn(shifted(shifted(point, a, pa, ha), b, pb, hb));
        const double fpm = fn(shifted(shifted(point, a, pa, ha), b, pb, -hb));
        const double fmp = fn(shifted(shifted(point, a, pa, -ha), b, pb, hb));
        const double fmm = fn(shifted(shifted(point, a, pa, -ha), b, pb, -hb));
        return (fpp - fpm - fmp + fmm) / (4.0 * ha * hb);
    };

    CMatrix hess(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = 0; k < m; ++k) {
            const double dxx = second(j, false, k, false);
            const double dyy = second(j, true, k, true);
            const double dxy = second(j, false, k, true);
            const double dyx = second(j, true, k, false);
            // d_j dbar_k = ((dxx + dyy) + i (dxy - dyx)) / 4
            hess(j, k) = 0.25 * Complex(dxx + dyy, dxy - dyx);
        }
    }
    return hess;
}

Complex fd_path_derivative(const std::array<Complex, 4>& samples, double step) {
    // samples: f(t-2h), f(t-h), f(t+h), f(t+2h)
    return (samples[0] - 8.0 * samples[1] + 8.0 * samples[2] - samples[3]) / (12.0 * step);
}

}  // namespace hkcp
