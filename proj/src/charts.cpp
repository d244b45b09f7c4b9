#include "hkcp/charts.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <vector>

#include "hkcp/rng.hpp"

namespace hkcp {

namespace {

constexpr double kPivotTol = 1e-10;

}  // namespace

ModelParams make_params(int n, Complex s) {
    if (n < 1) throw Error("model: n must be a positive integer");
    if (s == Complex(0.0, 0.0)) throw Error("model: s must be nonzero");
    return ModelParams{n, s, std::norm(s)};
}

CMatrix LeviElement::matrix() const {
    const auto n = a.rows();
    CMatrix m = CMatrix::Zero(n + 1, n + 1);
    m.topLeftCorner(n, n) = a;
    m(n, n) = d;
    return m;
}

GroupElement group_element(CMatrix m) {
    if (m.rows() != m.cols() || m.rows() < 2)
        throw DimensionError("group element must be square of size >= 2");
    const Complex det = dense_det(m);
    if (std::abs(det - Complex(1.0, 0.0)) > kAbsTol + kRelTol * m.norm())
        throw Error("group element: determinant is not 1");
    return GroupElement{std::move(m)};
}

GroupElement weyl_representative(int alpha, int n) {
    if (alpha < 0 || alpha > n) throw DimensionError("chart index out of range");
    CMatrix m = CMatrix::Zero(n + 1, n + 1);
    for (int j = 0; j < alpha; ++j) m(j, j) = 1.0;
    for (int j = alpha; j < n; ++j) m(j + 1, j) = 1.0;  // e_j -> e_{j+1}
    m(alpha, n) = 1.0;                                   // e_n -> e_alpha
    const bool odd_cycle = ((n - alpha) % 2) == 1;
    if (odd_cycle && alpha < n) m(alpha + 1, alpha) = -1.0;
    return GroupElement{std::move(m)};
}

GroupElement unipotent_upper(const CVector& z) {
    const auto n = z.size();
    CMatrix m = CMatrix::Identity(n + 1, n + 1);
    m.topRightCorner(n, 1) = z;
    return GroupElement{std::move(m)};
}

GroupElement unipotent_lower(const CRowVector& w) {
    const auto n = w.size();
    CMatrix m = CMatrix::Identity(n + 1, n + 1);
    m.bottomLeftCorner(1, n) = w;
    return GroupElement{std::move(m)};
}

CMatrix chart_representative(const ChartPoint& p, const ModelParams& params) {
    const CRowVector w = -p.xi / params.s;
    return weyl_representative(p.alpha, params.n).m * unipotent_upper(p.z).m *
           unipotent_lower(w).m;
}

GaussFactors gauss_factor(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() < 2)
        throw DimensionError("gauss_factor: matrix must be square of size >= 2");
    const auto n = m.rows() - 1;
    const Complex d = m(n, n);
    if (std::abs(d) < kPivotTol)
        throw NotFactorizableError("gauss_factor: corner pivot below tolerance");
    const CVector z = m.topRightCorner(n, 1) / d;
    const CMatrix a = m.topLeftCorner(n, n) - z * m.bottomLeftCorner(1, n);
    CMatrix a_inv;
    try {
        a_inv = dense_inverse(a);
    } catch (const SingularMatrixError&) {
        throw NotFactorizableError("gauss_factor: Levi block is singular");
    }
    const CRowVector w = m.bottomLeftCorner(1, n) * a_inv;
    return GaussFactors{z, w, LeviElement{a, d}};
}

TransitionResult transition(const ChartPoint& p, int beta, const ModelParams& params) {
    const int n = params.n;
    if (beta < 0 || beta > n) throw DimensionError("transition: chart index out of range");
    if (beta == p.alpha) {
        return TransitionResult{p, LeviElement{CMatrix::Identity(n, n), Complex(1.0, 0.0)}};
    }
    const CMatrix rep = chart_representative(p, params);
    const CMatrix m = weyl_representative(beta, n).m.transpose() * rep;
    GaussFactors f;
    try {
        f = gauss_factor(m);
    } catch (const NotFactorizableError& e) {
        throw OverlapError(std::string("transition: point outside chart overlap (") +
                           e.what() + ")");
    }
    ChartPoint q{beta, f.z, -params.s * f.w};
    return TransitionResult{std::move(q), std::move(f.t)};
}

Complex character_pairing(const CMatrix& x, const ModelParams& params) {
    const int n = params.n;
    if (x.rows() != n + 1 || x.cols() != n + 1)
        throw DimensionError("character_pairing: matrix size does not match model");
    const double off = x.topRightCorner(n, 1).norm();
    if (off > kAbsTol + kRelTol * x.norm())
        throw NotInParabolicError("character_pairing: upper-right block is nonzero");
    return -params.s * x(n, n);
}

ChartPoint group_action(const GroupElement& g, const ChartPoint& p,
                        const ModelParams& params) {
    const int n = params.n;
    const CMatrix moved = g.m * chart_representative(p, params);

    auto try_chart = [&](int beta, ChartPoint& out) {
        try {
            const GaussFactors f =
                gauss_factor(weyl_representative(beta, n).m.transpose() * moved);
            out = ChartPoint{beta, f.z, -params.s * f.w};
            return true;
        } catch (const NotFactorizableError&) {
            return false;
        }
    };

    ChartPoint result;
    if (try_chart(p.alpha, result)) return result;

    // Rank remaining charts by the magnitude of the Gauss corner pivot.
    std::vector<std::pair<double, int>> pivots;
    for (int beta = 0; beta <= n; ++beta) {
        if (beta == p.alpha) continue;
        const CMatrix candidate = weyl_representative(beta, n).m.transpose() * moved;
        pivots.emplace_back(std::abs(candidate(n, n)), beta);
    }
    std::sort(pivots.begin(), pivots.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [pivot, beta] : pivots) {
        if (pivot < kPivotTol) break;
        if (try_chart(beta, result)) return result;
    }
    throw Error("group_action: no admissible chart for the moved point");
}

GroupElement random_su(int n_plus_1, std::uint64_t seed) {
    if (n_plus_1 < 2) throw DimensionError("random_su: size must be >= 2");
    SeededRng rng(seed);
    CMatrix gauss(n_plus_1, n_plus_1);
    for (int i = 0; i < n_plus_1; ++i)
        for (int j = 0; j < n_plus_1; ++j) gauss(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<CMatrix> qr(gauss);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Absorb the R diagonal phases so the distribution is Haar, then fix the
    // overall phase so det = 1.
    for (int j = 0; j < n_plus_1; ++j) {
        const Complex rjj = r(j, j);
        if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
    }
    const Complex det = dense_det(q);
    q.col(n_plus_1 - 1) /= det;
    return GroupElement{std::move(q)};
}

}  // namespace hkcp
