#include "hkcp/suite.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>

#include "json.hpp"

namespace hkcp {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr CheckInfo kRegistry[] = {
    {"linalg.rank2_det", "closed-form rank-2 determinant vs dense LU determinant", false},
    {"linalg.rank2_inverse", "closed-form rank-2 inverse times (1 + A) vs identity", false},
    {"linalg.rank2_det_u1", "u = 1 specialization: det(1_n + A) = det(1_2 + pairing matrix)", false},
    {"charts.weyl_unitary", "chart representatives are special unitary", false},
    {"charts.factor_roundtrip", "Gauss factorization recovers (z, w, t) from u_z u^-_w t", false},
    {"charts.transition_roundtrip", "chart transition followed by its reverse returns the point", false},
    {"charts.transition_cocycle", "Levi cocycle t_ac = t_bc t_ab with consistent points", false},
    {"charts.transition_symplectic", "finite-difference transition Jacobian satisfies J^T S J = S", false},
    {"charts.gluing_one_form", "jump of xi dz across charts equals -s dlog(d) along paths", false},
    {"moment.tau_local_global", "tau via moment-map norm vs chart product formula", false},
    {"moment.tau_transition", "tau is chart independent", false},
    {"moment.tau_su_invariance", "tau is invariant under the unitary action", false},
    {"moment.equivariance", "moment map conjugates under the group action", false},
    {"moment.adjoint_relation", "antiholomorphic moment map is minus the adjoint of the holomorphic one", false},
    {"moment.spectrum", "moment-map values satisfy the orbit minimal polynomial", false},
    {"moment.lagrangian_minimum", "tau equals tau0 on the minimum locus", false},
    {"moment.tau_lower_bound", "tau >= tau0 everywhere", false},
    {"metric.jet_gradient_fd", "analytic tau gradient vs Wirtinger finite differences", false},
    {"metric.jet_hessian_fd", "analytic tau Hessian vs Wirtinger finite differences", false},
    {"metric.hessian_det", "det of the tau Hessian equals tau^(n-1)(2 tau - tau0)", false},
    {"metric.gradient_det_cramer", "column-replacement sum in Cramer form equals 2 tau^n (tau - tau0)", false},
    {"metric.gradient_det_brute", "column-replacement sum by brute force (n <= 2)", false},
    {"metric.det_unity", "dense det A = 1 across the Ricci-flat family", false},
    {"metric.det_closed_form", "dense det A matches the closed-form assembly", false},
    {"metric.ode_residual", "family profiles satisfy the defining ODE", false},
    {"metric.ode_negative", "perturbed profiles violate the ODE detectably", true},
    {"metric.det_negative", "perturbed profiles violate det A = 1 detectably", true},
    {"metric.base_point", "metric at the origin is diag(|s| 1_n, |s|^-1 1_n) for a = 0", false},
    {"metric.positive_definite", "metric is positive definite for a = 0", true},
    {"metric.ricci_flat_fd", "finite-difference Ricci form vanishes across the family", false},
    {"metric.ricci_negative", "constant profile has a detectable Ricci form", true},
    {"hk.quaternion_family", "I J K = -1 for family metric matrices", false},
    {"hk.quaternion_random", "I J K = -1 for random Hermitian invertible matrices", false},
    {"hk.defect_family", "symplectic defect vanishes for a = 0, and for every a at n = 1", false},
    {"hk.defect_witness", "symplectic defect exceeds threshold for n >= 2, a > 0", true},
    {"hk.sp_iff_quaternion", "defect vanishes exactly when J^2 = K^2 = -1", false},
    {"hk.blockwise_routes", "dense vs closed-form block assembly of A^T S A - S", false},
    {"hk.hermiticity", "Gram matrix is invariant under I, J, K when A is symplectic", false},
    {"hk.kahler_potential", "metric equals 2 d dbar sqrt(tau) by finite differences (a = 0)", false},
    {"hk.omega_forms", "constant symplectic coefficient matrices and flat-map consistency", false},
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t check_seed(const SuiteConfig& cfg, const char* id, int n, double a, int sample) {
    std::uint64_t h = fnv1a(id);
    h = fnv1a_u64(cfg.seed, h);
    h = fnv1a_u64(static_cast<std::uint64_t>(n), h);
    std::uint64_t abits = 0;
    std::memcpy(&abits, &a, sizeof abits);
    h = fnv1a_u64(abits, h);
    h = fnv1a_u64(static_cast<std::uint64_t>(sample), h);
    return h;
}

std::string digest_text(const std::string& text) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(text)));
    return buf;
}

double rel_err(double measured, double target) {
    return std::abs(measured - target) / std::max(1.0, std::abs(target));
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

struct Runner {
    const SuiteConfig& cfg;
    std::vector<CheckRecord>& out;

    const CheckInfo& info(const char* id) const {
        for (const auto& entry : kRegistry)
            if (std::strcmp(entry.id, id) == 0) return entry;
        throw Error(std::string("unknown check id: ") + id);
    }

    void add(const CheckInfo& entry, int n, double a, int sample, std::string digest,
             double value, double threshold) {
        const bool pass = std::isfinite(value) &&
                          (entry.must_exceed ? value > threshold : value <= threshold);
        out.push_back(CheckRecord{entry.id, n, a, sample, std::move(digest), value,
                                  threshold, pass});
    }

    // Runs `body` for every sample of one (check, case); exceptions become
    // failing records instead of aborting the suite.
    template <typename Body>
    void sampled(const char* id, int n, double a, const Body& body) {
        const CheckInfo& entry = info(id);
        for (int k = 0; k < cfg.samples; ++k) {
            SeededRng rng(check_seed(cfg, id, n, a, k));
            try {
                auto [digest, value, threshold] = body(rng, k);
                add(entry, n, a, k, std::move(digest), value, threshold);
            } catch (const Error& e) {
                add(entry, n, a, k, std::string("error:") + e.what(), kInf, 0.0);
            }
        }
    }

    template <typename Body>
    void single(const char* id, int n, double a, const Body& body) {
        const CheckInfo& entry = info(id);
        SeededRng rng(check_seed(cfg, id, n, a, 0));
        try {
            auto [digest, value, threshold] = body(rng, 0);
            add(entry, n, a, 0, std::move(digest), value, threshold);
        } catch (const Error& e) {
            add(entry, n, a, 0, std::string("error:") + e.what(), kInf, 0.0);
        }
    }

    MetricProfile profile_for(double a, const ModelParams& params) const {
        MetricProfile profile = make_profile(a, params);
        profile.eps_exclusion = cfg.lagrangian_exclusion * params.tau0;
        profile.perturbation = cfg.profile_perturbation;
        return profile;
    }
};

using CheckResult = std::tuple<std::string, double, double>;

}  // namespace

std::span<const CheckInfo> check_registry() { return kRegistry; }

ChartPoint sample_point(SeededRng& rng, const ModelParams& params) {
    const int n = params.n;
    ChartPoint p;
    p.alpha = rng.below(n + 1);
    p.z = CVector(n);
    p.xi = CRowVector(n);
    for (int i = 0; i < n; ++i) p.z[i] = rng.complex_gaussian();
    for (int i = 0; i < n; ++i) p.xi[i] = rng.complex_gaussian();
    return p;
}

ChartPoint sample_point_in_domain(SeededRng& rng, const ModelParams& params,
                                  const MetricProfile& profile) {
    for (int tries = 0; tries < 1000; ++tries) {
        ChartPoint p = sample_point(rng, params);
        const double tau = tau_local(p, params);
        if (profile.a > 0.0 && tau - profile.tau0 < 2.0 * profile.eps_exclusion) continue;
        return p;
    }
    throw DomainError("sample_point_in_domain: rejection sampling exhausted");
}

CMatrix sample_hermitian_invertible(SeededRng& rng, int dim) {
    for (int tries = 0; tries < 100; ++tries) {
        CMatrix b(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) b(i, j) = rng.complex_gaussian();
        CMatrix h = b + b.adjoint();
        if (std::abs(dense_det(h)) > 1e-3) return h;
    }
    throw Error("sample_hermitian_invertible: rejection sampling exhausted");
}

std::string point_digest(const ChartPoint& p) {
    std::string text = std::to_string(p.alpha);
    for (Eigen::Index i = 0; i < p.z.size(); ++i)
        text += "," + fmt17(p.z[i].real()) + "," + fmt17(p.z[i].imag());
    for (Eigen::Index i = 0; i < p.xi.size(); ++i)
        text += "," + fmt17(p.xi[i].real()) + "," + fmt17(p.xi[i].imag());
    return digest_text(text);
}

namespace {

// ---------------------------------------------------------------- linalg ---

void run_linalg(Runner& r) {
    const Tolerances& tol = r.cfg.tol;
    for (int len = 2; len <= 6; ++len) {
        r.sampled("linalg.rank2_det", len, kNaN, [&](SeededRng& rng, int) -> CheckResult {
            CVector z1(len), w1(len), z2(len), w2(len);
            for (int i = 0; i < len; ++i) {
                z1[i] = rng.complex_gaussian();
                w1[i] = rng.complex_gaussian();
                z2[i] = rng.complex_gaussian();
                w2[i] = rng.complex_gaussian();
            }
            const Complex u = rng.complex_gaussian();
            const CMatrix a = z1 * w1.transpose() + z2 * w2.transpose();
            const Complex dense =
                dense_det(u * CMatrix::Identity(len, len) + a);
            const Complex closed = rank2_det(u, z1, w1, z2, w2);
            const double value = std::abs(closed - dense) / std::max(1.0, std::abs(dense));
            return {digest_text(fmt17(u.real()) + fmt17(value)), value, 1e-10};
        });
        r.sampled("linalg.rank2_inverse", len, kNaN, [&](SeededRng& rng, int) -> CheckResult {
            for (int tries = 0; tries < 100; ++tries) {
                CVector z1(len), w1(len), z2(len), w2(len);
                for (int i = 0; i < len; ++i) {
                    z1[i] = rng.complex_gaussian();
                    w1[i] = rng.complex_gaussian();
                    z2[i] = rng.complex_gaussian();
                    w2[i] = rng.complex_gaussian();
                }
                const Eigen::Matrix2cd lambda = pairing_matrix(z1, w1, z2, w2);
                const Complex corr = (Eigen::Matrix2cd::Identity() + lambda).determinant();
                if (std::abs(corr) <= 1e-6) continue;
                const CMatrix a = z1 * w1.transpose() + z2 * w2.transpose();
                const CMatrix product =
                    rank2_inverse(z1, w1, z2, w2) * (CMatrix::Identity(len, len) + a);
                const double value = max_abs(product - CMatrix::Identity(len, len));
                return {digest_text(fmt17(value)), value, 1e-10};
            }
            throw Error("rank2_inverse sampling exhausted");
        });
        r.sampled("linalg.rank2_det_u1", len, kNaN, [&](SeededRng& rng, int) -> CheckResult {
            CVector z1(len), w1(len), z2(len), w2(len);
            for (int i = 0; i < len; ++i) {
                z1[i] = rng.complex_gaussian();
                w1[i] = rng.complex_gaussian();
                z2[i] = rng.complex_gaussian();
                w2[i] = rng.complex_gaussian();
            }
            const CMatrix a = z1 * w1.transpose() + z2 * w2.transpose();
            const Complex dense = dense_det(CMatrix::Identity(len, len) + a);
            const Complex via_pairing =
                (Eigen::Matrix2cd::Identity() + pairing_matrix(z1, w1, z2, w2)).determinant();
            const double value =
                std::abs(dense - via_pairing) / std::max(1.0, std::abs(dense));
            return {digest_text(fmt17(value)), value, 1e-10};
        });
    }
    (void)tol;
}

// ---------------------------------------------------------------- charts ---

ChartPoint sample_overlap_point(SeededRng& rng, const ModelParams& params, int& beta_out) {
    for (int tries = 0; tries < 200; ++tries) {
        ChartPoint p = sample_point(rng, params);
        int beta = rng.below(params.n + 1);
        if (beta == p.alpha) beta = (beta + 1) % (params.n + 1);
        try {
            (void)transition(p, beta, params);
            beta_out = beta;
            return p;
        } catch (const OverlapError&) {
            continue;
        }
    }
    throw OverlapError("sample_overlap_point: rejection sampling exhausted");
}

// Stacked coordinates of the transition target as a holomorphic map.
CVector transition_stacked(const ChartPoint& p, int beta, const ModelParams& params) {
    return stack_coords(transition(p, beta, params).point);
}

void run_charts(Runner& r, const ModelParams& params) {
    const int n = params.n;
    const Tolerances& tol = r.cfg.tol;

    r.single("charts.weyl_unitary", n, kNaN, [&](SeededRng&, int) -> CheckResult {
        double worst = 0.0;
        for (int alpha = 0; alpha <= n; ++alpha) {
            const CMatrix sigma = weyl_representative(alpha, n).m;
            worst = std::max(worst,
                             (sigma * sigma.adjoint() - CMatrix::Identity(n + 1, n + 1)).norm());
            worst = std::max(worst, std::abs(dense_det(sigma) - Complex(1.0, 0.0)));
        }
        return {digest_text("weyl" + std::to_string(n)), worst, 1e-14};
    });

    r.sampled("charts.factor_roundtrip", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        CVector z(n);
        CRowVector w(n);
        for (int i = 0; i < n; ++i) z[i] = rng.complex_gaussian();
        for (int i = 0; i < n; ++i) w[i] = rng.complex_gaussian();
        CMatrix levi_a;
        Complex det_a;
        do {
            levi_a = CMatrix(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) levi_a(i, j) = rng.complex_gaussian();
            det_a = dense_det(levi_a);
        } while (std::abs(det_a) < 1e-2);
        const LeviElement t{levi_a, 1.0 / det_a};  // det(a) d = 1
        const CMatrix m = unipotent_upper(z).m * unipotent_lower(w).m * t.matrix();
        const GaussFactors f = gauss_factor(m);
        double value = max_abs(f.z - z);
        value = std::max(value, max_abs(f.w - w));
        value = std::max(value, max_abs(f.t.a - levi_a));
        value = std::max(value, std::abs(f.t.d - t.d));
        value = std::max(value, (unipotent_upper(f.z).m * unipotent_lower(f.w).m *
                                     f.t.matrix() -
                                 m)
                                    .cwiseAbs()
                                    .maxCoeff());
        return {point_digest(ChartPoint{0, z, w}), value, 1e-10};
    });

    r.sampled("charts.transition_roundtrip", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        int beta = 0;
        const ChartPoint p = sample_overlap_point(rng, params, beta);
        const TransitionResult fwd = transition(p, beta, params);
        const TransitionResult back = transition(fwd.point, p.alpha, params);
        const double scale = std::max(1.0, std::max(max_abs(p.z), max_abs(p.xi)));
        double value = max_abs(back.point.z - p.z) / scale;
        value = std::max(value, max_abs(back.point.xi - p.xi) / scale);
        return {point_digest(p), value, 1e-9};
    });

    r.sampled("charts.transition_cocycle", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        for (int tries = 0; tries < 200; ++tries) {
            const ChartPoint p = sample_point(rng, params);
            const int beta = rng.below(n + 1);
            const int gamma = rng.below(n + 1);
            try {
                const TransitionResult ab = transition(p, beta, params);
                const TransitionResult bc = transition(ab.point, gamma, params);
                const TransitionResult ac = transition(p, gamma, params);
                const CMatrix composed = bc.t.matrix() * ab.t.matrix();
                double value = max_abs(ac.t.matrix() - composed) /
                               std::max(1.0, composed.cwiseAbs().maxCoeff());
                value = std::max(value, max_abs(bc.point.z - ac.point.z));
                value = std::max(value, max_abs(bc.point.xi - ac.point.xi));
                return {point_digest(p), value, 1e-9};
            } catch (const OverlapError&) {
                continue;
            }
        }
        throw OverlapError("cocycle sampling exhausted");
    });

    r.sampled("charts.transition_symplectic", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        for (int tries = 0; tries < 200; ++tries) {
            int beta = 0;
            const ChartPoint p = sample_overlap_point(rng, params, beta);
            const CVector coords = stack_coords(p);
            CMatrix jac(2 * n, 2 * n);
            try {
                for (int k = 0; k < 2 * n; ++k) {
                    const double h = 1e-5 * std::max(1.0, std::abs(coords[k]));
                    CVector plus = coords, minus = coords;
                    plus[k] += h;
                    minus[k] -= h;
                    jac.col(k) = (transition_stacked(unstack_coords(plus, p.alpha), beta, params) -
                                  transition_stacked(unstack_coords(minus, p.alpha), beta, params)) /
                                 (2.0 * h);
                }
            } catch (const OverlapError&) {
                continue;  // stencil fell off the overlap
            }
            const CMatrix s = symplectic_unit(n);
            const double value = max_abs(jac.transpose() * s * jac - s);
            return {point_digest(p), value, tol.fd_second};
        }
        throw OverlapError("transition_symplectic sampling exhausted");
    });

    r.sampled("charts.gluing_one_form", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const double h = 1e-4;  // 5-point stencil step along the path
        for (int tries = 0; tries < 200; ++tries) {
            int beta = 0;
            const ChartPoint p0 = sample_overlap_point(rng, params, beta);
            CVector dir_z(n);
            CRowVector dir_xi(n);
            for (int i = 0; i < n; ++i) dir_z[i] = 0.3 * rng.complex_gaussian();
            for (int i = 0; i < n; ++i) dir_xi[i] = 0.3 * rng.complex_gaussian();

            auto at = [&](double t) {
                return ChartPoint{p0.alpha, p0.z + t * dir_z, p0.xi + t * dir_xi};
            };
            try {
                const TransitionResult center = transition(at(0.0), beta, params);
                const std::array<TransitionResult, 4> stencil{
                    transition(at(-2.0 * h), beta, params), transition(at(-h), beta, params),
                    transition(at(h), beta, params), transition(at(2.0 * h), beta, params)};
                CVector zdot(n);
                for (int i = 0; i < n; ++i)
                    zdot[i] = fd_path_derivative(
                        {stencil[0].point.z[i], stencil[1].point.z[i],
                         stencil[2].point.z[i], stencil[3].point.z[i]},
                        h);
                const Complex ddot = fd_path_derivative(
                    {stencil[0].t.d, stencil[1].t.d, stencil[2].t.d, stencil[3].t.d}, h);
                const Complex lhs =
                    (center.point.xi * zdot).value() - (p0.xi * dir_z).value();
                const Complex rhs = -params.s * ddot / center.t.d;
                return {point_digest(p0), std::abs(lhs - rhs), tol.fd_second};
            } catch (const OverlapError&) {
                continue;
            }
        }
        throw OverlapError("gluing path sampling exhausted");
    });
}

// ---------------------------------------------------------------- moment ---

void run_moment(Runner& r, const ModelParams& params) {
    const int n = params.n;
    const Tolerances& tol = r.cfg.tol;

    r.sampled("moment.tau_local_global", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point(rng, params);
        const double local = tau_local(p, params);
        return {point_digest(p), rel_err(tau_global(p, params), local), 1e-10};
    });

    r.sampled("moment.tau_transition", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        int beta = 0;
        const ChartPoint p = sample_overlap_point(rng, params, beta);
        const ChartPoint q = transition(p, beta, params).point;
        return {point_digest(p), rel_err(tau_local(q, params), tau_local(p, params)), 1e-10};
    });

    r.sampled("moment.tau_su_invariance", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point(rng, params);
        const GroupElement u = random_su(n + 1, rng.raw());
        const ChartPoint q = group_action(u, p, params);
        return {point_digest(p), rel_err(tau_global(q, params), tau_global(p, params)),
                tol.identity};
    });

    r.sampled("moment.equivariance", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point(rng, params);
        const GroupElement u = random_su(n + 1, rng.raw());
        const ChartPoint q = group_action(u, p, params);
        const CMatrix mu = moment_plus(p, params);
        const CMatrix conjugated = u.m * mu * u.m.adjoint();
        const double value =
            (moment_plus(q, params) - conjugated).norm() / std::max(1.0, mu.norm());
        return {point_digest(p), value, tol.identity};
    });

    r.sampled("moment.adjoint_relation", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point(rng, params);
        const double value =
            (moment_minus(p, params) + moment_plus(p, params).adjoint()).norm();
        return {point_digest(p), value, 0.0};
    });

    r.sampled("moment.spectrum", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point(rng, params);
        const CMatrix mu = moment_plus(p, params);
        const CMatrix id = CMatrix::Identity(n + 1, n + 1);
        const Complex e1 = params.s / Complex(n + 1, 0.0);
        const Complex e2 = -Complex(n, 0.0) * params.s / Complex(n + 1, 0.0);
        const double value =
            ((mu - e1 * id) * (mu - e2 * id)).norm() / std::max(1.0, mu.squaredNorm());
        return {point_digest(p), value, tol.identity};
    });

    r.sampled("moment.lagrangian_minimum", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        CVector z(n);
        for (int i = 0; i < n; ++i) z[i] = rng.complex_gaussian();
        const ChartPoint p = lagrangian_point(z, rng.below(n + 1), params);
        return {point_digest(p), rel_err(tau_local(p, params), params.tau0), 1e-12};
    });

    r.sampled("moment.tau_lower_bound", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point(rng, params);
        const double value =
            (params.tau0 - tau_local(p, params)) / std::max(1.0, params.tau0);
        return {point_digest(p), value, 1e-12};
    });
}

// ---------------------------------------------------------------- metric ---

void run_metric_per_n(Runner& r, const ModelParams& params) {
    const int n = params.n;
    const Tolerances& tol = r.cfg.tol;

    r.sampled("metric.jet_gradient_fd", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point(rng, params);
        const TauJet jet = tau_jet(p, params);
        const ScalarField tau_field = [&](const CVector& coords) {
            return tau_local(unstack_coords(coords, p.alpha), params);
        };
        const WirtingerGradient fd = fd_gradient(tau_field, stack_coords(p), 1e-5);
        const double scale = std::max(1.0, jet.grad.cwiseAbs().maxCoeff());
        double value = (fd.holo - jet.grad).cwiseAbs().maxCoeff() / scale;
        value = std::max(value, (fd.anti - jet.gradbar).cwiseAbs().maxCoeff() / scale);
        return {point_digest(p), value, tol.fd_first};
    });

    r.sampled("metric.jet_hessian_fd", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point(rng, params);
        const TauJet jet = tau_jet(p, params);
        const ScalarField tau_field = [&](const CVector& coords) {
            return tau_local(unstack_coords(coords, p.alpha), params);
        };
        const CMatrix fd = fd_mixed_hessian(tau_field, stack_coords(p), 1e-4);
        const double scale = std::max(1.0, max_abs(jet.hess));
        return {point_digest(p), max_abs(fd - jet.hess) / scale, tol.fd_second};
    });

    r.sampled("metric.hessian_det", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point(rng, params);
        const IdentityPair pair = hessian_det_identity(p, params);
        return {point_digest(p), rel_err(pair.lhs, pair.rhs), tol.identity};
    });

    r.sampled("metric.gradient_det_cramer", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point(rng, params);
        const IdentityPair pair = gradient_det_identity(p, params);
        return {point_digest(p), rel_err(pair.lhs, pair.rhs), tol.identity};
    });

    if (n <= 2) {
        r.sampled("metric.gradient_det_brute", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
            const ChartPoint p = sample_point(rng, params);
            const IdentityPair pair = gradient_det_identity(p, params);
            const double brute = gradient_det_brute_force(p, params);
            const double value =
                std::max(rel_err(brute, pair.rhs), rel_err(brute, pair.lhs));
            return {point_digest(p), value, 1e-8};
        });
    }

    r.sampled("metric.ricci_negative", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        MetricProfile flat = make_profile(0.0, params);
        flat.kind = ProfileKind::constant_one;
        const ChartPoint p = sample_point(rng, params);
        const CMatrix rho = ricci_form_fd(p, flat, params);
        return {point_digest(p), max_abs(rho), tol.defect_negative};
    });
}

void run_metric_per_profile(Runner& r, const ModelParams& params, double a) {
    const int n = params.n;
    const Tolerances& tol = r.cfg.tol;
    const MetricProfile profile = r.profile_for(a, params);

    r.sampled("metric.det_unity", n, a, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point_in_domain(rng, params, profile);
        const MetricMatrix mm = metric_matrix(p, profile, params);
        return {point_digest(p), std::abs(dense_det(mm.A) - Complex(1.0, 0.0)),
                tol.identity};
    });

    r.sampled("metric.det_closed_form", n, a, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point_in_domain(rng, params, profile);
        const MetricMatrix mm = metric_matrix(p, profile, params);
        const double dense = dense_det(mm.A).real();
        const double closed = det_closed_form(tau_local(p, params), profile);
        return {point_digest(p), rel_err(closed, dense), tol.identity};
    });

    const double grid_lo = params.tau0 + std::max(0.05 * params.tau0, 3.0 * profile.eps_exclusion);
    const double grid_hi = params.tau0 + 5.0 * std::max(1.0, params.tau0);
    auto grid_tau = [&](int k) {
        if (r.cfg.samples <= 1) return grid_lo;
        return grid_lo + (grid_hi - grid_lo) * k / (r.cfg.samples - 1);
    };

    r.sampled("metric.ode_residual", n, a, [&](SeededRng&, int k) -> CheckResult {
        const double tau = grid_tau(k);
        const ProfileValue pv = profile_eval(tau, profile);
        const double value = std::abs(ode_residual(pv.f, pv.fprime, tau, profile) - 1.0);
        return {digest_text(fmt17(tau)), value, tol.identity};
    });

    r.sampled("metric.ode_negative", n, a, [&](SeededRng&, int k) -> CheckResult {
        MetricProfile perturbed = profile;
        perturbed.perturbation = profile.perturbation + 1e-3;
        const double tau = grid_tau(k);
        const ProfileValue pv = profile_eval(tau, perturbed);
        const double value = std::abs(ode_residual(pv.f, pv.fprime, tau, perturbed) - 1.0);
        return {digest_text(fmt17(tau)), value, 1e-4};
    });

    r.sampled("metric.det_negative", n, a, [&](SeededRng& rng, int) -> CheckResult {
        MetricProfile perturbed = profile;
        perturbed.perturbation = profile.perturbation + 1e-3;
        const ChartPoint p = sample_point_in_domain(rng, params, perturbed);
        const MetricMatrix mm = metric_matrix(p, perturbed, params);
        return {point_digest(p), std::abs(dense_det(mm.A) - Complex(1.0, 0.0)), 1e-4};
    });

    if (a == 0.0) {
        r.single("metric.base_point", n, a, [&](SeededRng&, int) -> CheckResult {
            ChartPoint origin{n, CVector::Zero(n), CRowVector::Zero(n)};
            const MetricMatrix mm = metric_matrix(origin, profile, params);
            const double mod_s = std::abs(params.s);
            CMatrix expected = CMatrix::Identity(2 * n, 2 * n);
            expected.topLeftCorner(n, n) *= mod_s;
            expected.bottomRightCorner(n, n) *= 1.0 / mod_s;
            const double scale = std::max(mod_s, 1.0 / mod_s);
            return {point_digest(origin), max_abs(mm.A - expected) / scale, 1e-14};
        });

        r.sampled("metric.positive_definite", n, a, [&](SeededRng& rng, int) -> CheckResult {
            const ChartPoint p = sample_point(rng, params);
            const MetricMatrix mm = metric_matrix(p, profile, params);
            return {point_digest(p), hermitian_min_eigenvalue(mm.A), 0.0};
        });
    }

    r.sampled("metric.ricci_flat_fd", n, a, [&](SeededRng& rng, int) -> CheckResult {
        for (int tries = 0; tries < 100; ++tries) {
            const ChartPoint p = sample_point_in_domain(rng, params, profile);
            try {
                const CMatrix rho = ricci_form_fd(p, profile, params);
                return {point_digest(p), max_abs(rho), 1e-6};
            } catch (const DomainError&) {
                continue;  // stencil crossed the exclusion band
            }
        }
        throw DomainError("ricci_flat_fd sampling exhausted");
    });
}

// ----------------------------------------------------------- hyperkahler ---

void run_hyperkahler(Runner& r, const ModelParams& params, double a) {
    const int n = params.n;
    const Tolerances& tol = r.cfg.tol;
    const MetricProfile profile = r.profile_for(a, params);

    r.sampled("hk.quaternion_family", n, a, [&](SeededRng& rng, int) -> CheckResult {
        for (int tries = 0; tries < 100; ++tries) {
            const ChartPoint p = sample_point_in_domain(rng, params, profile);
            try {
                const MetricMatrix mm = metric_matrix(p, profile, params);
                const ACSTriple t = build_triple(mm.A);
                const auto dim = t.I.rows();
                const double value =
                    (t.I * t.J * t.K + CMatrix::Identity(dim, dim)).norm();
                return {point_digest(p), value, 1e-10};
            } catch (const SingularMatrixError&) {
                continue;
            }
        }
        throw Error("quaternion_family sampling exhausted");
    });

    if (a == 0.0 || n == 1) {
        r.sampled("hk.defect_family", n, a, [&](SeededRng& rng, int) -> CheckResult {
            const ChartPoint p = sample_point_in_domain(rng, params, profile);
            const MetricMatrix mm = metric_matrix(p, profile, params);
            return {point_digest(p), symplectic_defect(mm.A).norm(), tol.identity};
        });
    }

    if (n >= 2 && a > 0.0) {
        r.single("hk.defect_witness", n, a, [&](SeededRng&, int) -> CheckResult {
            const ChartPoint p = defect_witness_point(params);
            const MetricMatrix mm = metric_matrix(p, profile, params);
            return {point_digest(p), symplectic_defect(mm.A).norm(), tol.defect_negative};
        });
    }

    r.sampled("hk.blockwise_routes", n, a, [&](SeededRng& rng, int) -> CheckResult {
        const ChartPoint p = sample_point_in_domain(rng, params, profile);
        const DefectRoutes routes = symplectic_defect_routes(p, profile, params);
        const double scale = std::max(1.0, max_abs(routes.direct));
        double value = max_abs(routes.direct - routes.blockwise) / scale;
        const TauJet jet = tau_jet(p, params);
        value = std::max(value, routes.rank_one_defect /
                                    std::max(1.0, jet.grad.squaredNorm() *
                                                      jet.grad.squaredNorm()));
        return {point_digest(p), value, tol.identity};
    });

    if (a == 0.0 || n == 1) {
        r.sampled("hk.hermiticity", n, a, [&](SeededRng& rng, int) -> CheckResult {
            const ChartPoint p = sample_point_in_domain(rng, params, profile);
            const MetricMatrix mm = metric_matrix(p, profile, params);
            const HermiticityReport rep = hermiticity_check(mm.A, build_triple(mm.A));
            const bool ok = rep.i_status == CheckStatus::passed &&
                            rep.j_status == CheckStatus::passed &&
                            rep.k_status == CheckStatus::passed;
            const double value =
                ok ? std::max({rep.i_defect, rep.j_defect, rep.k_defect}) : kInf;
            return {point_digest(p), value, tol.identity};
        });
    }
}

void run_hyperkahler_per_n(Runner& r, const ModelParams& params) {
    const int n = params.n;
    const Tolerances& tol = r.cfg.tol;

    r.sampled("hk.quaternion_random", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const CMatrix h = sample_hermitian_invertible(rng, 2 * n);
        const ACSTriple t = build_triple(h);
        const auto dim = t.I.rows();
        const double value = (t.I * t.J * t.K + CMatrix::Identity(dim, dim)).norm();
        return {digest_text(fmt17(h(0, 0).real())), value, 1e-10};
    });

    r.sampled("hk.sp_iff_quaternion", n, kNaN, [&](SeededRng& rng, int k) -> CheckResult {
        CMatrix a;
        std::string digest;
        if (k % 2 == 0) {
            const MetricProfile profile = r.profile_for(0.0, params);
            const ChartPoint p = sample_point(rng, params);
            a = metric_matrix(p, profile, params).A;
            digest = point_digest(p);
        } else {
            a = sample_hermitian_invertible(rng, 2 * n);
            digest = digest_text(fmt17(a(0, 0).real()));
        }
        const ACSTriple t = build_triple(a);
        const auto dim = t.I.rows();
        const CMatrix id = CMatrix::Identity(dim, dim);
        const bool defect_zero = symplectic_defect(a).norm() < 1e-7;
        const bool squares_ok = (t.J * t.J + id).norm() < 1e-7 &&
                                (t.K * t.K + id).norm() < 1e-7;
        return {digest, defect_zero == squares_ok ? 0.0 : 1.0, 0.5};
    });

    if (n <= 2) {
        r.sampled("hk.kahler_potential", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
            const ChartPoint p = sample_point(rng, params);
            const KahlerPotentialResult res = kahler_potential_check(p, params);
            const double scale = std::max(1.0, max_abs(res.analytic));
            return {point_digest(p), max_abs(res.analytic - res.fd) / scale,
                    tol.fd_second};
        });
    }

    r.single("hk.omega_forms", n, kNaN, [&](SeededRng& rng, int) -> CheckResult {
        const OmegaForms forms = omega_constant_forms(n);
        const CMatrix s = symplectic_unit(n);
        double value = 0.0;
        // Pairings of the coordinate frame.
        value = std::max(value, std::abs(forms.omega_j(0, n) - Complex(0.5, 0.0)));
        value = std::max(value, std::abs(forms.omega_k(0, n) - Complex(0.0, -0.5)));
        // omega_j + i omega_k has only the holomorphic block, equal to S.
        const CMatrix holo = forms.omega_j + Complex(0.0, 1.0) * forms.omega_k;
        value = std::max(value, max_abs(holo.topLeftCorner(2 * n, 2 * n) - s));
        value = std::max(value, max_abs(holo.bottomRightCorner(2 * n, 2 * n)));
        value = std::max(value, max_abs(holo.topRightCorner(2 * n, 2 * n)));
        value = std::max(value, max_abs(holo.bottomLeftCorner(2 * n, 2 * n)));
        // Flat-map consistency against a generic Hermitian matrix.
        const CMatrix a = sample_hermitian_invertible(rng, 2 * n);
        const ACSTriple t = build_triple(a);
        const CMatrix omega_i = omega_i_matrix(a);
        value = std::max(value, max_abs(t.J.transpose() * omega_i - forms.omega_k));
        value = std::max(value, max_abs(t.K.transpose() * forms.omega_j - omega_i));
        return {digest_text("omega" + std::to_string(n)), value, 1e-10};
    });
}

}  // namespace

VerificationReport run_suite(const SuiteConfig& config) {
    VerificationReport report;
    report.tool_version = "1.0.0";
    report.schema_version = "hkcp-report/1";
    report.config = config;
    {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::tm tm_utc{};
        gmtime_r(&tt, &tm_utc);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        report.timestamp = buf;
    }

    Runner runner{config, report.records};
    run_linalg(runner);
    for (int n : config.n_values) {
        const ModelParams params = make_params(n, config.s);
        run_charts(runner, params);
        run_moment(runner, params);
        run_metric_per_n(runner, params);
        run_hyperkahler_per_n(runner, params);
        for (double a : config.a_values) {
            run_metric_per_profile(runner, params, a);
            run_hyperkahler(runner, params, a);
        }
    }
    return report;
}

bool all_passed(const VerificationReport& report) {
    for (const auto& rec : report.records)
        if (!rec.pass) return false;
    return true;
}

namespace {

ordered_json config_json(const SuiteConfig& cfg) {
    ordered_json j;
    j["n"] = cfg.n_values;
    j["s"] = {cfg.s.real(), cfg.s.imag()};
    j["a"] = cfg.a_values;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["tolerances"] = {{"fd_first", cfg.tol.fd_first},
                       {"fd_second", cfg.tol.fd_second},
                       {"identity", cfg.tol.identity},
                       {"defect_negative", cfg.tol.defect_negative}};
    j["lagrangian_exclusion"] = cfg.lagrangian_exclusion;
    j["profile_perturbation"] = cfg.profile_perturbation;
    return j;
}

ordered_json body_json(const VerificationReport& report) {
    ordered_json body;
    body["config"] = config_json(report.config);

    ordered_json registry = ordered_json::array();
    for (const auto& entry : kRegistry)
        registry.push_back({{"id", entry.id}, {"description", entry.description}});
    body["registry"] = registry;

    ordered_json records = ordered_json::array();
    for (const auto& rec : report.records) {
        ordered_json j;
        j["check_id"] = rec.check_id;
        j["n"] = rec.n;
        if (std::isnan(rec.a))
            j["a"] = nullptr;
        else
            j["a"] = rec.a;
        j["sample"] = rec.sample;
        j["point"] = rec.point_digest;
        if (std::isfinite(rec.value))
            j["value"] = rec.value;
        else
            j["value"] = nullptr;
        j["threshold"] = rec.threshold;
        j["pass"] = rec.pass;
        records.push_back(std::move(j));
    }
    body["records"] = std::move(records);

    ordered_json by_check = ordered_json::object();
    int passed = 0;
    for (const auto& entry : kRegistry) {
        int total = 0, ok = 0;
        for (const auto& rec : report.records) {
            if (rec.check_id != entry.id) continue;
            ++total;
            if (rec.pass) ++ok;
        }
        if (total > 0) by_check[entry.id] = {{"total", total}, {"passed", ok}};
    }
    for (const auto& rec : report.records)
        if (rec.pass) ++passed;
    body["summary"] = {{"total", report.records.size()},
                       {"passed", passed},
                       {"failed", report.records.size() - passed},
                       {"by_check", std::move(by_check)}};
    return body;
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
    ordered_json j;
    j["header"] = {{"tool", "hkcp"},
                   {"version", report.tool_version},
                   {"schema", report.schema_version},
                   {"timestamp", report.timestamp}};
    j["body"] = body_json(report);
    return j.dump(2) + "\n";
}

std::string report_body_json(const VerificationReport& report) {
    return body_json(report).dump(2) + "\n";
}

std::string report_to_csv(const VerificationReport& report) {
    std::string out = "check_id,n,a,seed,sample,value,threshold,pass\n";
    for (const auto& rec : report.records) {
        out += rec.check_id;
        out += ',' + std::to_string(rec.n);
        out += ',' + fmt17(rec.a);
        out += ',' + std::to_string(report.config.seed);
        out += ',' + std::to_string(rec.sample);
        out += ',' + fmt17(rec.value);
        out += ',' + fmt17(rec.threshold);
        out += rec.pass ? ",1\n" : ",0\n";
    }
    return out;
}

}  // namespace hkcp
