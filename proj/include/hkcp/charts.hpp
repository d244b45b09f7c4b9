#pragma once

#include <cstdint>

#include "hkcp/linalg.hpp"

namespace hkcp {

/// Model data: the base dimension n (the manifold is the twisted cotangent
/// bundle of CP^n) and the nonzero twist s. tau0 = |s|^2 is the minimum of
/// the invariant function tau.
struct ModelParams {
    int n = 1;
    Complex s{1.0, 0.0};
    double tau0 = 1.0;
};

/// Validates n >= 1 and s != 0 and derives tau0 = |s|^2.
ModelParams make_params(int n, Complex s);

/// Element of SL(n+1, C). det = 1 is a contract, checked where elements enter
/// from the outside; internal constructions preserve it by block structure.
struct GroupElement {
    CMatrix m;
};

/// Block-diagonal Levi element diag(a, d) with det(a) * d = 1.
struct LeviElement {
    CMatrix a;   // n x n
    Complex d{1.0, 0.0};

    CMatrix matrix() const;
};

/// A point of the bundle in chart coordinates: chart index alpha in {0..n},
/// base coordinate z (column) and fiber coordinate xi (row).
struct ChartPoint {
    int alpha = 0;
    CVector z;
    CRowVector xi;
};

/// Validating constructor for external matrices claiming to be in SL(n+1,C).
GroupElement group_element(CMatrix m);

/// Signed-permutation representative of the cyclic permutation
/// (alpha, alpha+1, ..., n) on coordinate indices, with one entry negated
/// when the cycle is odd so that det = +1. weyl_representative(n, n) = 1.
/// Sign convention: the negated entry is the image of e_alpha.
GroupElement weyl_representative(int alpha, int n);

/// Upper unipotent [[1_n, z], [0, 1]].
GroupElement unipotent_upper(const CVector& z);

/// Lower unipotent [[1_n, 0], [w, 1]].
GroupElement unipotent_lower(const CRowVector& w);

/// sigma_alpha * u_z * u^-_w for the point's chart data, with w = -xi / s.
CMatrix chart_representative(const ChartPoint& p, const ModelParams& params);

struct GaussFactors {
    CVector z;
    CRowVector w;
    LeviElement t;
};

/// Unique factorization m = u_z * u^-_w * t with t in the Levi subgroup.
/// Writing m in blocks [[m11, m12], [m21, m22]] (m11 is n x n, m22 scalar):
/// d = m22, z = m12 / m22, a = m11 - z m21, w = m21 a^{-1}.
/// Throws NotFactorizableError when a pivot is below tolerance.
GaussFactors gauss_factor(const CMatrix& m);

struct TransitionResult {
    ChartPoint point;
    LeviElement t;
};

/// Re-expresses p in chart beta. The returned Levi element t satisfies
///   sigma_alpha u_{z_alpha} u^-_{w_alpha} = sigma_beta u_{z_beta} u^-_{w_beta} t,
/// which is the orientation under which the chart-gluing 1-form identity
///   xi_beta dz_beta - xi_alpha dz_alpha = -s dlog(d_t)
/// and the cocycle rule t_ac = t_bc * t_ab hold. Throws OverlapError when p
/// lies outside the overlap with chart beta.
TransitionResult transition(const ChartPoint& p, int beta, const ModelParams& params);

/// Pairing of the twisting character with x in the parabolic subalgebra
/// (block lower triangular): returns -s * x(n, n). Throws NotInParabolicError
/// when the upper-right block is not zero within tolerance.
Complex character_pairing(const CMatrix& x, const ModelParams& params);

/// Holomorphic action of g on the bundle: factor g * sigma_alpha u_z u^-_w in
/// an admissible chart. Tries the source chart first, then charts in order of
/// decreasing Gauss pivot magnitude.
ChartPoint group_action(const GroupElement& g, const ChartPoint& p, const ModelParams& params);

/// Haar-like SU(n+1) element: QR of a seeded complex Gaussian matrix with the
/// phases of the R diagonal absorbed, then one column rescaled so det = 1.
/// Deterministic per seed.
GroupElement random_su(int n_plus_1, std::uint64_t seed);

}  // namespace hkcp
