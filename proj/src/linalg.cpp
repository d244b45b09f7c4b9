#include "hkcp/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>

namespace hkcp {

namespace {

// Integer power that is exact for small exponents and defines 0^0 = 1,
// which std::pow does not guarantee for complex arguments.
Complex ipow(Complex base, int exp) {
    Complex out(1.0, 0.0);
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

void require_same_length(const CVector& z1, const CVector& w1, const CVector& z2,
                         const CVector& w2) {
    const auto n = z1.size();
    if (w1.size() != n || z2.size() != n || w2.size() != n)
        throw DimensionError("rank-2 update: generating vectors differ in length");
}

}  // namespace

bool approx_equal(const CMatrix& a, const CMatrix& b, double abs_tol, double rel_tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    const double scale = std::max(a.norm(), b.norm());
    return (a - b).norm() <= abs_tol + rel_tol * scale;
}

Eigen::Matrix2cd pairing_matrix(const CVector& z1, const CVector& w1,
                                const CVector& z2, const CVector& w2) {
    require_same_length(z1, w1, z2, w2);
    Eigen::Matrix2cd lambda;
    // Canonical bilinear form, no conjugation.
    lambda << w1.transpose() * z1, w1.transpose() * z2,
              w2.transpose() * z1, w2.transpose() * z2;
    return lambda;
}

Complex rank2_det(Complex u, const CVector& z1, const CVector& w1,
                  const CVector& z2, const CVector& w2) {
    require_same_length(z1, w1, z2, w2);
    const int n = static_cast<int>(z1.size());
    if (n < 2) throw DimensionError("rank2_det requires length >= 2");
    const Eigen::Matrix2cd lambda = pairing_matrix(z1, w1, z2, w2);
    return ipow(u, n - 2) * (u * u + u * lambda.trace() + lambda.determinant());
}

CMatrix rank2_inverse(const CVector& z1, const CVector& w1, const CVector& z2,
                      const CVector& w2) {
    require_same_length(z1, w1, z2, w2);
    const auto n = z1.size();
    const Eigen::Matrix2cd lambda = pairing_matrix(z1, w1, z2, w2);
    const Eigen::Matrix2cd corr = Eigen::Matrix2cd::Identity() + lambda;
    const Complex den = corr.determinant();
    if (std::abs(den) < 1e-12 * std::max(1.0, corr.squaredNorm()))
        throw SingularMatrixError("rank2_inverse: 1_2 + pairing matrix is singular");
    const Complex l11 = lambda(0, 0), l12 = lambda(0, 1);
    const Complex l21 = lambda(1, 0), l22 = lambda(1, 1);
    CMatrix out = CMatrix::Identity(n, n);
    out -= ((1.0 + l22) * (z1 * w1.transpose()) - l12 * (z1 * w2.transpose()) -
            l21 * (z2 * w1.transpose()) + (1.0 + l11) * (z2 * w2.transpose())) /
           den;
    return out;
}

Complex dense_det(const CMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("dense_det: matrix not square");
    return Eigen::PartialPivLU<CMatrix>(m).determinant();
}

CMatrix dense_inverse(const CMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("dense_inverse: matrix not square");
    Eigen::PartialPivLU<CMatrix> lu(m);
    const double fro = m.norm();
    const double threshold = 1e-12 * std::pow(fro, static_cast<double>(m.rows()));
    if (!(std::abs(lu.determinant()) > threshold))
        throw SingularMatrixError("dense_inverse: matrix is numerically singular");
    return lu.inverse();
}

double hermitian_min_eigenvalue(const CMatrix& m) {
    if (m.rows() != m.cols())
        throw DimensionError("hermitian_min_eigenvalue: matrix not square");
    const double defect = (m - m.adjoint()).norm();
    if (defect > kAbsTol + kRelTol * m.norm())
        throw NonHermitianError("hermitian_min_eigenvalue: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace hkcp
