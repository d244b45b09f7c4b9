#pragma once

#include <Eigen/Dense>
#include <complex>

#include "hkcp/errors.hpp"

namespace hkcp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;

// Matrix equality is always judged with this pair: absolute slack plus a
// relative slack on Frobenius norms. Matrices here never exceed 14 x 14,
// so double precision leaves a wide margin below these values.
inline constexpr double kAbsTol = 1e-10;
inline constexpr double kRelTol = 1e-8;

/// True when ||a - b||_F <= abs_tol + rel_tol * max(||a||_F, ||b||_F).
bool approx_equal(const CMatrix& a, const CMatrix& b, double abs_tol = kAbsTol,
                  double rel_tol = kRelTol);

/// 2x2 matrix of canonical bilinear pairings <w_i, z_j> = sum_k w_i[k] z_j[k]
/// of the generators of a rank-2 update z1 w1^T + z2 w2^T.
Eigen::Matrix2cd pairing_matrix(const CVector& z1, const CVector& w1,
                                const CVector& z2, const CVector& w2);

/// det(u 1_n + z1 w1^T + z2 w2^T) in closed form:
/// u^(n-2) (u^2 + u tr(L) + det(L)) with L the 2x2 pairing matrix.
/// Requires all four vectors of equal length n >= 2.
Complex rank2_det(Complex u, const CVector& z1, const CVector& w1,
                  const CVector& z2, const CVector& w2);

/// (1_n + z1 w1^T + z2 w2^T)^(-1) in closed form. Throws SingularMatrixError
/// when det(1_2 + L) falls below the singularity threshold.
CMatrix rank2_inverse(const CVector& z1, const CVector& w1, const CVector& z2,
                      const CVector& w2);

/// Determinant via LU with partial pivoting.
Complex dense_det(const CMatrix& m);

/// Inverse via LU with partial pivoting. Throws SingularMatrixError when
/// |det| < 1e-12 * ||m||_F^dim (scale-invariant singularity threshold).
CMatrix dense_inverse(const CMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix. Throws NonHermitianError when
/// ||m - m^*||_F exceeds the equality tolerance.
double hermitian_min_eigenvalue(const CMatrix& m);

}  // namespace hkcp
