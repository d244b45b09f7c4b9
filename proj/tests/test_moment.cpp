#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "hkcp/moment.hpp"
#include "hkcp/rng.hpp"

using namespace hkcp;

namespace {

ChartPoint random_point(SeededRng& rng, const ModelParams& params) {
    ChartPoint p;
    p.alpha = rng.below(params.n + 1);
    p.z = CVector(params.n);
    p.xi = CRowVector(params.n);
    for (int i = 0; i < params.n; ++i) p.z[i] = rng.complex_gaussian();
    for (int i = 0; i < params.n; ++i) p.xi[i] = rng.complex_gaussian();
    return p;
}

}  // namespace

TEST_CASE("character_dual: pinned values and tracelessness") {
    const ModelParams p1 = make_params(1, Complex(1.0, 0.0));
    CMatrix expected1(2, 2);
    expected1 << 0.5, 0.0, 0.0, -0.5;
    CHECK((character_dual(p1) - expected1).norm() == 0.0);

    const ModelParams p2 = make_params(2, Complex(0.0, 2.0));
    CMatrix expected2 = CMatrix::Zero(3, 3);
    expected2(0, 0) = Complex(0.0, 2.0 / 3.0);
    expected2(1, 1) = Complex(0.0, 2.0 / 3.0);
    expected2(2, 2) = Complex(0.0, -4.0 / 3.0);
    CHECK((character_dual(p2) - expected2).norm() < 1e-15);

    for (int n = 1; n <= 4; ++n) {
        const ModelParams p = make_params(n, Complex(0.3, -1.7));
        CHECK(std::abs(character_dual(p).trace()) < 1e-12);
    }
}

TEST_CASE("moment_plus: base point, spectrum, chart independence") {
    const ModelParams params = make_params(2, Complex(1.0, 1.0));

    // Chart n has the identity representative, so the base point maps to the
    // character dual itself.
    const ChartPoint base{2, CVector::Zero(2), CRowVector::Zero(2)};
    CHECK((moment_plus(base, params) - character_dual(params)).norm() == 0.0);

    SeededRng rng(101);
    const Complex e1 = params.s / Complex(3.0, 0.0);
    const Complex e2 = -2.0 * params.s / Complex(3.0, 0.0);
    for (int trial = 0; trial < 50; ++trial) {
        const ChartPoint p = random_point(rng, params);
        const CMatrix mu = moment_plus(p, params);

        // Minimal polynomial: (mu - e1)(mu - e2) = 0 on the whole orbit.
        const CMatrix id = CMatrix::Identity(3, 3);
        CHECK(((mu - e1 * id) * (mu - e2 * id)).norm() <
              1e-9 * std::max(1.0, mu.squaredNorm()));

        // Eigenvalue multiset {e1, e1, e2} from a dense eigensolver.
        Eigen::ComplexEigenSolver<CMatrix> eig(mu);
        std::vector<double> to_e1;
        for (int i = 0; i < 3; ++i) to_e1.push_back(std::abs(eig.eigenvalues()[i] - e1));
        std::sort(to_e1.begin(), to_e1.end());
        CHECK(to_e1[0] < 1e-9);
        CHECK(to_e1[1] < 1e-9);
        std::vector<double> to_e2;
        for (int i = 0; i < 3; ++i) to_e2.push_back(std::abs(eig.eigenvalues()[i] - e2));
        CHECK(*std::min_element(to_e2.begin(), to_e2.end()) < 1e-9);
    }

    // Chart independence.
    int done = 0;
    while (done < 20) {
        const ChartPoint p = random_point(rng, params);
        const int beta = (p.alpha + 1) % 3;
        try {
            const ChartPoint q = transition(p, beta, params).point;
            CHECK((moment_plus(q, params) - moment_plus(p, params)).norm() <
                  1e-9 * std::max(1.0, moment_plus(p, params).norm()));
            ++done;
        } catch (const OverlapError&) {
            continue;
        }
    }
}

TEST_CASE("moment_minus is minus the adjoint") {
    const ModelParams params = make_params(1, Complex(0.7, -0.2));
    const ChartPoint base{1, CVector::Zero(1), CRowVector::Zero(1)};
    CHECK((moment_minus(base, params) + character_dual(params).adjoint()).norm() == 0.0);

    SeededRng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const ChartPoint p = random_point(rng, params);
        CHECK((moment_minus(p, params) + moment_plus(p, params).adjoint()).norm() == 0.0);
    }

    // Real s at the base point: the value is real diagonal, so mu_minus is
    // minus the character dual itself.
    const ModelParams real_s = make_params(2, Complex(2.0, 0.0));
    const ChartPoint base2{2, CVector::Zero(2), CRowVector::Zero(2)};
    CHECK((moment_minus(base2, real_s) + character_dual(real_s)).norm() == 0.0);
}

TEST_CASE("tau: base point, pinned example, local vs global") {
    const ModelParams params = make_params(1, Complex(1.0, 0.0));
    const ChartPoint base{1, CVector::Zero(1), CRowVector::Zero(1)};
    CHECK(tau_global(base, params) == doctest::Approx(1.0));
    CHECK(tau_local(base, params) == doctest::Approx(1.0));

    CVector z(1);
    z << Complex(2.0, 0.0);
    const ChartPoint p{1, z, CRowVector::Zero(1)};
    CHECK(tau_global(p, params) == doctest::Approx(5.0));

    const ModelParams params2 = make_params(2, Complex(1.0, 0.0));
    CVector z2(2);
    z2 << Complex(1.0, 0.0), Complex(0.0, 0.0);
    CRowVector xi2(2);
    xi2 << Complex(0.0, 0.0), Complex(1.0, 0.0);
    CHECK(tau_local(ChartPoint{0, z2, xi2}, params2) == doctest::Approx(4.0));

    SeededRng rng(2024);
    for (int n : {1, 2, 3}) {
        const ModelParams pn = make_params(n, Complex(0.8, 0.6));
        for (int trial = 0; trial < 167; ++trial) {
            const ChartPoint q = random_point(rng, pn);
            const double local = tau_local(q, pn);
            CHECK(std::abs(tau_global(q, pn) - local) <= 1e-10 * std::max(1.0, local));
            CHECK(local >= pn.tau0 * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("lagrangian points: construction and minimum") {
    const ModelParams params = make_params(1, Complex(1.0, 0.0));

    const ChartPoint zero = lagrangian_point(CVector::Zero(1), 0, params);
    CHECK(zero.xi.norm() == 0.0);

    CVector one(1);
    one << Complex(1.0, 0.0);
    const ChartPoint p = lagrangian_point(one, 1, params);
    CHECK(std::abs(p.xi[0] - Complex(0.5, 0.0)) < 1e-15);
    CHECK(tau_local(p, params) == doctest::Approx(1.0));

    SeededRng rng(303);
    for (int n : {1, 2, 3}) {
        const ModelParams pn = make_params(n, Complex(-1.2, 0.4));
        for (int trial = 0; trial < 100; ++trial) {
            CVector z(n);
            for (int i = 0; i < n; ++i) z[i] = rng.complex_gaussian();
            const ChartPoint lp = lagrangian_point(z, rng.below(n + 1), pn);
            CHECK(std::abs(tau_local(lp, pn) - pn.tau0) <= 1e-12 * pn.tau0);

            // Off the minimum locus tau exceeds tau0.
            ChartPoint off = lp;
            off.xi[0] += 0.1;
            CHECK(tau_local(off, pn) > pn.tau0 + 1e-4);
        }
    }
}

TEST_CASE("tau invariance and moment equivariance under the unitary action") {
    SeededRng rng(424);
    for (int n : {1, 2}) {
        const ModelParams params = make_params(n, Complex(1.0, 0.0));
        for (int trial = 0; trial < 100; ++trial) {
            const ChartPoint p = random_point(rng, params);
            const GroupElement u = random_su(n + 1, rng.raw());
            const ChartPoint q = group_action(u, p, params);

            const double tau = tau_global(p, params);
            CHECK(std::abs(tau_global(q, params) - tau) <= 1e-9 * std::max(1.0, tau));

            const CMatrix mu = moment_plus(p, params);
            CHECK((moment_plus(q, params) - u.m * mu * u.m.adjoint()).norm() <=
                  1e-9 * std::max(1.0, mu.norm()));
        }
    }
}
