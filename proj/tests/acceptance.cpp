// Acceptance suite: every criterion the artifact must meet, each run at its
// stated tolerance and reported as a single PASS/FAIL line. Exit 0 only when
// all criteria hold.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hkcp/suite.hpp"

using namespace hkcp;

namespace {

const std::vector<Complex> kTwists{Complex(1.0, 0.0), Complex(0.0, 2.0)};
const std::vector<int> kDims{1, 2, 3};
const std::vector<double> kFamily{0.0, 0.5, 2.0};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// --- C1: dense det A = 1 across the family, 100 points per case ------------

bool c1_determinant(std::string& detail) {
    double worst = 0.0;
    for (int n : kDims) {
        for (Complex s : kTwists) {
            const ModelParams params = make_params(n, s);
            for (double a : kFamily) {
                const MetricProfile profile = make_profile(a, params);
                SeededRng rng(fnv1a_u64(n * 100 + static_cast<int>(4 * a), fnv1a("c1")) ^
                              static_cast<std::uint64_t>(std::norm(s) * 255));
                for (int k = 0; k < 100; ++k) {
                    const ChartPoint p = sample_point_in_domain(rng, params, profile);
                    const MetricMatrix mm = metric_matrix(p, profile, params);
                    worst = std::max(worst, std::abs(dense_det(mm.A) - Complex(1.0, 0.0)));
                }
            }
        }
    }
    detail = "max |det A - 1| = " + fmt(worst) + " over 1800 points";
    return worst < 1e-9;
}

// --- C2: ODE residual 1 within 1e-9; perturbed profiles fail ---------------

bool c2_ode(std::string& detail) {
    double worst = 0.0;
    double weakest_negative = 1e300;
    for (int n : kDims) {
        for (Complex s : kTwists) {
            const ModelParams params = make_params(n, s);
            for (double a : kFamily) {
                MetricProfile profile = make_profile(a, params);
                const double lo = params.tau0 * 1.05;
                const double hi = params.tau0 + 5.0 * std::max(1.0, params.tau0);
                for (int k = 0; k < 50; ++k) {
                    const double tau = lo + (hi - lo) * k / 49.0;
                    const ProfileValue pv = profile_eval(tau, profile);
                    worst = std::max(
                        worst, std::abs(ode_residual(pv.f, pv.fprime, tau, profile) - 1.0));
                }
                MetricProfile perturbed = profile;
                perturbed.perturbation = 1e-3;
                double deviation = 0.0;
                for (int k = 0; k < 50; ++k) {
                    const double tau = lo + (hi - lo) * k / 49.0;
                    const ProfileValue pv = profile_eval(tau, perturbed);
                    deviation = std::max(
                        deviation,
                        std::abs(ode_residual(pv.f, pv.fprime, tau, perturbed) - 1.0));
                }
                weakest_negative = std::min(weakest_negative, deviation);
            }
        }
    }
    detail = "max |residual - 1| = " + fmt(worst) + "; weakest perturbed deviation = " +
             fmt(weakest_negative);
    return worst < 1e-9 && weakest_negative > 1e-4;
}

// --- C3: determinant identities of the tau Hessian -------------------------

bool c3_identities(std::string& detail) {
    double worst_hess = 0.0, worst_grad = 0.0;
    for (int n : kDims) {
        for (Complex s : kTwists) {
            const ModelParams params = make_params(n, s);
            SeededRng rng(fnv1a_u64(n, fnv1a("c3")));
            for (int k = 0; k < 100; ++k) {
                const ChartPoint p = sample_point(rng, params);
                const IdentityPair h = hessian_det_identity(p, params);
                worst_hess = std::max(worst_hess, std::abs(h.lhs - h.rhs) /
                                                      std::max(1.0, std::abs(h.rhs)));
                const IdentityPair g = gradient_det_identity(p, params);
                worst_grad = std::max(worst_grad, std::abs(g.lhs - g.rhs) /
                                                      std::max(1.0, std::abs(g.rhs)));
                if (n <= 2) {
                    const double brute = gradient_det_brute_force(p, params);
                    worst_grad = std::max(worst_grad, std::abs(brute - g.rhs) /
                                                          std::max(1.0, std::abs(g.rhs)));
                }
            }
        }
    }
    detail = "Hessian-det rel err = " + fmt(worst_hess) +
             "; gradient-sum rel err = " + fmt(worst_grad);
    return worst_hess < 1e-9 && worst_grad < 1e-8;
}

// --- C4: symplectic criterion in both directions ----------------------------

bool c4_symplectic(std::string& detail) {
    double worst_zero = 0.0;
    double weakest_witness = 1e300;
    for (Complex s : kTwists) {
        for (int n : kDims) {
            const ModelParams params = make_params(n, s);
            // a = 0: defect and quaternion squares vanish.
            {
                const MetricProfile profile = make_profile(0.0, params);
                SeededRng rng(fnv1a_u64(n, fnv1a("c4.zero")));
                for (int k = 0; k < 100; ++k) {
                    const ChartPoint p = sample_point(rng, params);
                    const MetricMatrix mm = metric_matrix(p, profile, params);
                    worst_zero = std::max(worst_zero, symplectic_defect(mm.A).norm());
                    const ACSTriple t = build_triple(mm.A);
                    const CMatrix id = CMatrix::Identity(4 * n, 4 * n);
                    worst_zero = std::max(worst_zero, (t.J * t.J + id).norm());
                    worst_zero = std::max(worst_zero, (t.K * t.K + id).norm());
                }
            }
            // n = 1: every family member is symplectic away from the minimum.
            if (n == 1) {
                for (double a : kFamily) {
                    const MetricProfile profile = make_profile(a, params);
                    SeededRng rng(fnv1a_u64(static_cast<int>(4 * a), fnv1a("c4.one")));
                    for (int k = 0; k < 100; ++k) {
                        const ChartPoint p = sample_point_in_domain(rng, params, profile);
                        const MetricMatrix mm = metric_matrix(p, profile, params);
                        worst_zero = std::max(worst_zero, symplectic_defect(mm.A).norm());
                    }
                }
            } else {
                // n >= 2, a > 0: defect exceeds threshold at the witness.
                for (double a : {0.5, 2.0}) {
                    const MetricProfile profile = make_profile(a, params);
                    const ChartPoint w = defect_witness_point(params);
                    const MetricMatrix mm = metric_matrix(w, profile, params);
                    weakest_witness =
                        std::min(weakest_witness, symplectic_defect(mm.A).norm());
                }
            }
        }
    }
    detail = "max defect on symplectic side = " + fmt(worst_zero) +
             "; min witness defect = " + fmt(weakest_witness);
    return worst_zero < 1e-9 && weakest_witness > 1e-3;
}

// --- C5: quaternion product for every invertible Hermitian A ---------------

bool c5_quaternion(std::string& detail) {
    double worst = 0.0;
    for (int n : kDims) {
        const CMatrix id = CMatrix::Identity(4 * n, 4 * n);
        // Family matrices, symplectic or not.
        for (Complex s : kTwists) {
            const ModelParams params = make_params(n, s);
            for (double a : kFamily) {
                const MetricProfile profile = make_profile(a, params);
                SeededRng rng(fnv1a_u64(n + static_cast<int>(8 * a), fnv1a("c5")));
                for (int k = 0; k < 30; ++k) {
                    const ChartPoint p = sample_point_in_domain(rng, params, profile);
                    const ACSTriple t = build_triple(metric_matrix(p, profile, params).A);
                    worst = std::max(worst, (t.I * t.J * t.K + id).norm());
                }
            }
        }
        // Random Hermitian invertible matrices.
        SeededRng rng(fnv1a_u64(n, fnv1a("c5.random")));
        for (int k = 0; k < 50; ++k) {
            const CMatrix h = sample_hermitian_invertible(rng, 2 * n);
            const ACSTriple t = build_triple(h);
            worst = std::max(worst, (t.I * t.J * t.K + id).norm());
        }
    }
    detail = "max ||I J K + 1|| = " + fmt(worst);
    return worst < 1e-10;
}

// --- C6: base-point metric and positivity for a = 0 ------------------------

bool c6_base_point(std::string& detail) {
    double worst = 0.0;
    double min_eig = 1e300;
    for (int n : kDims) {
        for (Complex s : kTwists) {
            const ModelParams params = make_params(n, s);
            const MetricProfile profile = make_profile(0.0, params);
            const ChartPoint origin{n, CVector::Zero(n), CRowVector::Zero(n)};
            const MetricMatrix mm = metric_matrix(origin, profile, params);
            const double mod_s = std::abs(s);
            CMatrix expected = CMatrix::Identity(2 * n, 2 * n);
            expected.topLeftCorner(n, n) *= mod_s;
            expected.bottomRightCorner(n, n) *= 1.0 / mod_s;
            worst = std::max(worst, (mm.A - expected).cwiseAbs().maxCoeff() /
                                        std::max(mod_s, 1.0 / mod_s));

            SeededRng rng(fnv1a_u64(n, fnv1a("c6")));
            for (int k = 0; k < 100; ++k) {
                const ChartPoint p = sample_point(rng, params);
                min_eig = std::min(
                    min_eig, hermitian_min_eigenvalue(metric_matrix(p, profile, params).A));
            }
        }
    }
    detail = "base-point max rel deviation = " + fmt(worst) +
             "; min eigenvalue over samples = " + fmt(min_eig);
    return worst < 1e-14 && min_eig > 0.0;
}

// --- C7: tau coherence ------------------------------------------------------

bool c7_tau(std::string& detail) {
    double worst_lg = 0.0, worst_chart = 0.0, worst_min = 0.0, worst_su = 0.0;
    for (int n : kDims) {
        for (Complex s : kTwists) {
            const ModelParams params = make_params(n, s);
            SeededRng rng(fnv1a_u64(n, fnv1a("c7")));
            for (int k = 0; k < 100; ++k) {
                const ChartPoint p = sample_point(rng, params);
                const double local = tau_local(p, params);
                worst_lg = std::max(worst_lg, std::abs(tau_global(p, params) - local) /
                                                  std::max(1.0, local));

                int beta = rng.below(n + 1);
                if (beta == p.alpha) beta = (beta + 1) % (n + 1);
                try {
                    const ChartPoint q = transition(p, beta, params).point;
                    worst_chart =
                        std::max(worst_chart, std::abs(tau_local(q, params) - local) /
                                                  std::max(1.0, local));
                } catch (const OverlapError&) {
                }

                CVector z(n);
                for (int i = 0; i < n; ++i) z[i] = rng.complex_gaussian();
                const ChartPoint lp = lagrangian_point(z, rng.below(n + 1), params);
                worst_min = std::max(worst_min, std::abs(tau_local(lp, params) - params.tau0) /
                                                    params.tau0);

                const GroupElement u = random_su(n + 1, rng.raw());
                const ChartPoint moved = group_action(u, p, params);
                worst_su = std::max(worst_su, std::abs(tau_global(moved, params) -
                                                       tau_global(p, params)) /
                                                  std::max(1.0, local));
            }
        }
    }
    detail = "local/global = " + fmt(worst_lg) + "; transition = " + fmt(worst_chart) +
             "; minimum = " + fmt(worst_min) + "; unitary = " + fmt(worst_su);
    return worst_lg < 1e-10 && worst_chart < 1e-10 && worst_min < 1e-12 &&
           worst_su < 1e-9;
}

// --- C8: transitions glue symplectically ------------------------------------

bool c8_gluing(std::string& detail) {
    double worst_jac = 0.0, worst_glue = 0.0;
    for (int n : kDims) {
        for (Complex s : kTwists) {
            const ModelParams params = make_params(n, s);
            const CMatrix sp = symplectic_unit(n);
            SeededRng rng(fnv1a_u64(n, fnv1a("c8")));
            int done = 0;
            while (done < 20) {
                const ChartPoint p = sample_point(rng, params);
                int beta = rng.below(n + 1);
                if (beta == p.alpha) beta = (beta + 1) % (n + 1);
                try {
                    // Holomorphic Jacobian of the transition by central differences.
                    const CVector coords = stack_coords(p);
                    CMatrix jac(2 * n, 2 * n);
                    for (int c = 0; c < 2 * n; ++c) {
                        const double h = 1e-5 * std::max(1.0, std::abs(coords[c]));
                        CVector plus = coords, minus = coords;
                        plus[c] += h;
                        minus[c] -= h;
                        const ChartPoint pp = unstack_coords(plus, p.alpha);
                        const ChartPoint pm = unstack_coords(minus, p.alpha);
                        jac.col(c) = (stack_coords(transition(pp, beta, params).point) -
                                      stack_coords(transition(pm, beta, params).point)) /
                                     (2.0 * h);
                    }
                    worst_jac = std::max(
                        worst_jac,
                        (jac.transpose() * sp * jac - sp).cwiseAbs().maxCoeff());

                    // Path derivative of the gluing identity, 5-point stencil.
                    const double h = 1e-4;
                    CVector dir_z(n);
                    CRowVector dir_xi(n);
                    for (int i = 0; i < n; ++i) dir_z[i] = 0.3 * rng.complex_gaussian();
                    for (int i = 0; i < n; ++i) dir_xi[i] = 0.3 * rng.complex_gaussian();
                    auto at = [&](double t) {
                        return ChartPoint{p.alpha, p.z + t * dir_z, p.xi + t * dir_xi};
                    };
                    const TransitionResult center = transition(at(0.0), beta, params);
                    const TransitionResult m2 = transition(at(-2 * h), beta, params);
                    const TransitionResult m1 = transition(at(-h), beta, params);
                    const TransitionResult p1 = transition(at(h), beta, params);
                    const TransitionResult p2 = transition(at(2 * h), beta, params);
                    CVector zdot(n);
                    for (int i = 0; i < n; ++i)
                        zdot[i] = fd_path_derivative(
                            {m2.point.z[i], m1.point.z[i], p1.point.z[i], p2.point.z[i]},
                            h);
                    const Complex ddot =
                        fd_path_derivative({m2.t.d, m1.t.d, p1.t.d, p2.t.d}, h);
                    const Complex lhs =
                        (center.point.xi * zdot).value() - (p.xi * dir_z).value();
                    const Complex rhs = -params.s * ddot / center.t.d;
                    worst_glue = std::max(worst_glue, std::abs(lhs - rhs));
                    ++done;
                } catch (const OverlapError&) {
                    continue;
                }
            }
        }
    }
    detail = "max ||J^T S J - S|| = " + fmt(worst_jac) +
             "; max gluing mismatch = " + fmt(worst_glue);
    return worst_jac < 1e-5 && worst_glue < 1e-5;
}

// --- C9: moment map ----------------------------------------------------------

bool c9_moment(std::string& detail) {
    double worst_adj = 0.0, worst_spec = 0.0, worst_equiv = 0.0;
    for (int n : kDims) {
        for (Complex s : kTwists) {
            const ModelParams params = make_params(n, s);
            const Complex e1 = s / Complex(n + 1, 0.0);
            const Complex e2 = -Complex(n, 0.0) * s / Complex(n + 1, 0.0);
            SeededRng rng(fnv1a_u64(n, fnv1a("c9")));
            for (int k = 0; k < 100; ++k) {
                const ChartPoint p = sample_point(rng, params);
                const CMatrix mu = moment_plus(p, params);

                worst_adj = std::max(
                    worst_adj, (moment_minus(p, params) + mu.adjoint()).norm());

                // Spectrum: eigenvalue multiset and the minimal polynomial.
                Eigen::ComplexEigenSolver<CMatrix> eig(mu);
                std::vector<double> d1, d2;
                for (int i = 0; i <= n; ++i) {
                    d1.push_back(std::abs(eig.eigenvalues()[i] - e1));
                    d2.push_back(std::abs(eig.eigenvalues()[i] - e2));
                }
                std::sort(d1.begin(), d1.end());
                worst_spec = std::max(worst_spec, d1[n - 1]);  // n closest to e1
                worst_spec =
                    std::max(worst_spec, *std::min_element(d2.begin(), d2.end()));
                const CMatrix id = CMatrix::Identity(n + 1, n + 1);
                worst_spec = std::max(worst_spec,
                                      ((mu - e1 * id) * (mu - e2 * id)).norm() /
                                          std::max(1.0, mu.squaredNorm()));

                const GroupElement u = random_su(n + 1, rng.raw());
                const ChartPoint moved = group_action(u, p, params);
                worst_equiv = std::max(
                    worst_equiv, (moment_plus(moved, params) - u.m * mu * u.m.adjoint())
                                         .norm() /
                                     std::max(1.0, mu.norm()));
            }
        }
    }
    detail = "adjoint relation = " + fmt(worst_adj) + "; spectrum = " + fmt(worst_spec) +
             "; equivariance = " + fmt(worst_equiv);
    return worst_adj == 0.0 && worst_spec < 1e-9 && worst_equiv < 1e-9;
}

// --- C10: Kahler potential by finite differences -----------------------------

bool c10_potential(std::string& detail) {
    double worst = 0.0;
    for (int n : {1, 2}) {
        for (Complex s : kTwists) {
            const ModelParams params = make_params(n, s);
            SeededRng rng(fnv1a_u64(n, fnv1a("c10")));
            for (int k = 0; k < 50; ++k) {
                const ChartPoint p = sample_point(rng, params);
                const KahlerPotentialResult res = kahler_potential_check(p, params);
                const double scale = std::max(1.0, res.analytic.cwiseAbs().maxCoeff());
                worst = std::max(worst,
                                 (res.analytic - res.fd).cwiseAbs().maxCoeff() / scale);
            }
        }
    }
    detail = "max rel deviation of 2 d dbar sqrt(tau) = " + fmt(worst);
    return worst < 1e-5;
}

// --- C11: rank-2 linear algebra lemmas ---------------------------------------

bool c11_lemmas(std::string& detail) {
    double worst_det = 0.0, worst_inv = 0.0;
    for (int len = 2; len <= 6; ++len) {
        SeededRng rng(fnv1a_u64(len, fnv1a("c11")));
        for (int k = 0; k < 200; ++k) {
            CVector z1(len), w1(len), z2(len), w2(len);
            for (int i = 0; i < len; ++i) {
                z1[i] = rng.complex_gaussian();
                w1[i] = rng.complex_gaussian();
                z2[i] = rng.complex_gaussian();
                w2[i] = rng.complex_gaussian();
            }
            const CMatrix a = z1 * w1.transpose() + z2 * w2.transpose();
            const Complex u = rng.complex_gaussian();
            const Complex dense = dense_det(u * CMatrix::Identity(len, len) + a);
            worst_det = std::max(worst_det, std::abs(rank2_det(u, z1, w1, z2, w2) - dense) /
                                                std::max(1.0, std::abs(dense)));

            const Complex corr =
                (Eigen::Matrix2cd::Identity() + pairing_matrix(z1, w1, z2, w2))
                    .determinant();
            if (std::abs(corr) > 1e-6) {
                const CMatrix product =
                    rank2_inverse(z1, w1, z2, w2) * (CMatrix::Identity(len, len) + a);
                worst_inv = std::max(
                    worst_inv,
                    (product - CMatrix::Identity(len, len)).cwiseAbs().maxCoeff());
            }
        }
    }
    detail = "rank-2 det rel err = " + fmt(worst_det) +
             "; inverse product deviation = " + fmt(worst_inv);
    return worst_det < 1e-10 && worst_inv < 1e-10;
}

// --- C12: determinism ---------------------------------------------------------

bool c12_determinism(std::string& detail) {
    SuiteConfig cfg;
    cfg.n_values = {1, 2};
    cfg.a_values = {0.0, 1.0};
    cfg.samples = 5;
    cfg.seed = 4242;
    const VerificationReport r1 = run_suite(cfg);
    const VerificationReport r2 = run_suite(cfg);
    const bool same_body = report_body_json(r1) == report_body_json(r2);
    const bool same_csv = report_to_csv(r1) == report_to_csv(r2);
    detail = std::string("byte-identical bodies: ") + (same_body ? "yes" : "no");
    return same_body && same_csv;
}

struct Criterion {
    const char* name;
    bool (*run)(std::string&);
};

const Criterion kCriteria[] = {
    {"C1 Ricci-flat determinant identity (det A = 1, rel < 1e-9)", c1_determinant},
    {"C2 defining ODE residual (= 1 within 1e-9; perturbed fails > 1e-4)", c2_ode},
    {"C3 Hessian/gradient determinant identities (rel < 1e-9 / 1e-8)", c3_identities},
    {"C4 symplectic criterion (defect < 1e-9 iff a = 0 or n = 1; witness > 1e-3)",
     c4_symplectic},
    {"C5 quaternion product I J K = -1 (< 1e-10 for all Hermitian A)", c5_quaternion},
    {"C6 base-point metric diag(|s|, 1/|s|) (machine precision; positive definite)",
     c6_base_point},
    {"C7 tau coherence (local/global, transitions, minimum locus, unitary action)",
     c7_tau},
    {"C8 symplectic gluing (J^T S J = S and one-form jump, < 1e-5)", c8_gluing},
    {"C9 moment map (adjoint relation, spectrum, equivariance)", c9_moment},
    {"C10 Kahler potential 2 d dbar sqrt(tau) (rel < 1e-5)", c10_potential},
    {"C11 rank-2 determinant and inverse lemmas (< 1e-10)", c11_lemmas},
    {"C12 report determinism (byte-identical bodies)", c12_determinism},
};

}  // namespace

int main() {
    int failed = 0;
    for (const Criterion& criterion : kCriteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s — %s\n", ok ? "PASS" : "FAIL", criterion.name,
                    detail.c_str());
        if (!ok) ++failed;
    }
    const int total = static_cast<int>(std::size(kCriteria));
    std::printf("ACCEPTANCE: %d/%d criteria passed\n", total - failed, total);
    return failed == 0 ? 0 : 1;
}
