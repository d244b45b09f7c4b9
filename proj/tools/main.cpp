// Command-line front end: suite execution, point evaluation, chart
// transitions, and profile scans. Exit codes: 0 success / all checks passed,
// 1 runtime or check failure, 2 usage error.

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hkcp/suite.hpp"
#include "json.hpp"

namespace {

using hkcp::Complex;
using ordered_json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Complex literals: `re` or `re+imj` (and `re-imj`); a bare `imj` is accepted.
Complex parse_complex(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double first = std::strtod(begin, &end);
    if (end == begin || errno == ERANGE)
        throw UsageError("malformed complex literal: '" + text + "'");
    if (*end == '\0') return {first, 0.0};
    if (*end == 'j' && *(end + 1) == '\0') return {0.0, first};
    const char* second_begin = end;
    char* second_end = nullptr;
    const double second = std::strtod(second_begin, &second_end);
    if (second_end == second_begin || *second_end != 'j' || *(second_end + 1) != '\0')
        throw UsageError("malformed complex literal: '" + text + "'");
    return {first, second};
}

ordered_json complex_json(Complex v) { return ordered_json{v.real(), v.imag()}; }

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

struct PointFlags {
    int n = 1;
    double s_re = 1.0, s_im = 0.0;
    double a = 0.0;
    int alpha = 0;
    std::vector<std::string> z_text, xi_text;
    bool lagrangian = false;

    hkcp::ModelParams params() const {
        if (s_re == 0.0 && s_im == 0.0) throw UsageError("s must be nonzero");
        return hkcp::make_params(n, Complex(s_re, s_im));
    }

    hkcp::ChartPoint point(const hkcp::ModelParams& p) const {
        if (static_cast<int>(z_text.size()) != p.n)
            throw UsageError("--z must be given exactly n times");
        hkcp::CVector z(p.n);
        for (int i = 0; i < p.n; ++i) z[i] = parse_complex(z_text[i]);
        if (lagrangian) {
            if (!xi_text.empty())
                throw UsageError("--lagrangian and --xi are mutually exclusive");
            return hkcp::lagrangian_point(z, alpha, p);
        }
        if (static_cast<int>(xi_text.size()) != p.n)
            throw UsageError("--xi must be given exactly n times (or use --lagrangian)");
        hkcp::CRowVector xi(p.n);
        for (int i = 0; i < p.n; ++i) xi[i] = parse_complex(xi_text[i]);
        return hkcp::ChartPoint{alpha, z, xi};
    }
};

void add_point_flags(CLI::App* cmd, PointFlags& flags, bool with_profile) {
    cmd->add_option("--n", flags.n, "base dimension n");
    cmd->add_option("--s-re", flags.s_re, "real part of the twist s");
    cmd->add_option("--s-im", flags.s_im, "imaginary part of the twist s");
    if (with_profile) cmd->add_option("--a", flags.a, "family parameter a >= 0");
    cmd->add_option("--alpha", flags.alpha, "chart index");
    cmd->add_option("--z", flags.z_text, "base coordinate entries (complex literals)");
    cmd->add_option("--xi", flags.xi_text, "fiber coordinate entries (complex literals)");
    cmd->add_flag("--lagrangian", flags.lagrangian,
                  "place the point on the minimum locus (xi derived from z)");
}

struct GridFlags {
    double a = 0.0;
    int n = 1;
    std::optional<double> tau0;
    std::optional<double> s_re, s_im;
    double tau_min = 1.1, tau_max = 5.0;
    int steps = 50;
    double perturb = 0.0;

    hkcp::MetricProfile profile() const {
        double t0 = 0.0;
        if (tau0) {
            if (s_re || s_im) throw UsageError("--tau0 and --s-re/--s-im are mutually exclusive");
            t0 = *tau0;
        } else {
            const Complex s(s_re.value_or(1.0), s_im.value_or(0.0));
            if (s == Complex(0.0, 0.0)) throw UsageError("s must be nonzero");
            t0 = std::norm(s);
        }
        if (!(t0 > 0.0)) throw UsageError("tau0 must be positive");
        if (a < 0.0) throw UsageError("a must be >= 0");
        if (n < 1) throw UsageError("n must be >= 1");
        hkcp::MetricProfile p;
        p.a = a;
        p.n = n;
        p.tau0 = t0;
        p.eps_exclusion = 1e-3 * t0;
        p.perturbation = perturb;
        return p;
    }

    std::vector<double> grid() const {
        if (steps < 0) throw UsageError("--steps must be >= 0");
        std::vector<double> taus;
        for (int k = 0; k < steps; ++k)
            taus.push_back(steps == 1 ? tau_min
                                      : tau_min + (tau_max - tau_min) * k / (steps - 1));
        return taus;
    }
};

void add_grid_flags(CLI::App* cmd, GridFlags& flags) {
    cmd->add_option("--a", flags.a, "family parameter a >= 0");
    cmd->add_option("--n", flags.n, "base dimension n");
    auto* tau0 = cmd->add_option("--tau0", flags.tau0, "tau0 directly (alternative to --s-re/--s-im)");
    auto* sre = cmd->add_option("--s-re", flags.s_re, "real part of s (tau0 = |s|^2)");
    auto* sim = cmd->add_option("--s-im", flags.s_im, "imaginary part of s");
    tau0->excludes(sre)->excludes(sim);
    cmd->add_option("--tau-min", flags.tau_min, "grid start");
    cmd->add_option("--tau-max", flags.tau_max, "grid end");
    cmd->add_option("--steps", flags.steps, "number of grid points");
    cmd->add_option("--perturb", flags.perturb, "multiply f by (1 + delta)");
}

int run_verify(const std::vector<int>& n_values, double s_re, double s_im,
               const std::vector<double>& a_values, int samples, std::uint64_t seed,
               const std::string& out, const std::string& format, double perturb) {
    if (s_re == 0.0 && s_im == 0.0) throw UsageError("s must be nonzero");
    if (samples < 1) throw UsageError("--samples must be >= 1");
    hkcp::SuiteConfig cfg;
    if (!n_values.empty()) cfg.n_values = n_values;
    for (int n : cfg.n_values)
        if (n < 1) throw UsageError("--n must be >= 1");
    if (!a_values.empty()) cfg.a_values = a_values;
    for (double a : cfg.a_values)
        if (a < 0.0) throw UsageError("--a must be >= 0");
    cfg.s = Complex(s_re, s_im);
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.profile_perturbation = perturb;

    const hkcp::VerificationReport report = hkcp::run_suite(cfg);
    if (format == "json")
        write_output(out, hkcp::report_to_json(report));
    else if (format == "csv")
        write_output(out, hkcp::report_to_csv(report));
    else
        throw UsageError("--format must be json or csv");
    return hkcp::all_passed(report) ? 0 : 1;
}

int run_eval(const PointFlags& flags) {
    const hkcp::ModelParams params = flags.params();
    const hkcp::ChartPoint p = flags.point(params);
    if (flags.a < 0.0) throw UsageError("a must be >= 0");
    hkcp::MetricProfile profile = hkcp::make_profile(flags.a, params);
    const hkcp::MetricMatrix mm = hkcp::metric_matrix(p, profile, params);
    const Complex det = hkcp::dense_det(mm.A);
    const double min_eig = hkcp::hermitian_min_eigenvalue(mm.A);
    const double defect = hkcp::symplectic_defect(mm.A).norm();
    Eigen::ComplexEigenSolver<hkcp::CMatrix> eig(hkcp::moment_plus(p, params));

    ordered_json j;
    j["tau"] = hkcp::tau_local(p, params);
    j["det_A"] = complex_json(det);
    j["min_eigenvalue"] = min_eig;
    j["symplectic_defect"] = defect;
    ordered_json eigs = ordered_json::array();
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
        eigs.push_back(complex_json(eig.eigenvalues()[i]));
    j["mu_plus_eigenvalues"] = std::move(eigs);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_transition(const PointFlags& flags, int to_chart) {
    const hkcp::ModelParams params = flags.params();
    const hkcp::ChartPoint p = flags.point(params);
    const hkcp::TransitionResult res = hkcp::transition(p, to_chart, params);

    ordered_json j;
    j["alpha"] = p.alpha;
    j["beta"] = to_chart;
    ordered_json zb = ordered_json::array(), xib = ordered_json::array();
    for (int i = 0; i < params.n; ++i) zb.push_back(complex_json(res.point.z[i]));
    for (int i = 0; i < params.n; ++i) xib.push_back(complex_json(res.point.xi[i]));
    j["z_beta"] = std::move(zb);
    j["xi_beta"] = std::move(xib);
    j["levi"] = {{"det_a", complex_json(hkcp::dense_det(res.t.a))},
                 {"d", complex_json(res.t.d)}};
    j["tau_source"] = hkcp::tau_local(p, params);
    j["tau_target"] = hkcp::tau_local(res.point, params);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_scan(const GridFlags& flags, const std::string& out) {
    const hkcp::MetricProfile profile = flags.profile();
    std::string csv = "tau,f,fprime,ode_residual,det_closed_form\n";
    for (double tau : flags.grid()) {
        csv += fmt17(tau);
        try {
            const hkcp::ProfileValue pv = hkcp::profile_eval(tau, profile);
            csv += ',' + fmt17(pv.f);
            csv += ',' + fmt17(pv.fprime);
            csv += ',' + fmt17(hkcp::ode_residual(pv.f, pv.fprime, tau, profile));
            csv += ',' + fmt17(hkcp::det_closed_form(tau, profile));
            csv += '\n';
        } catch (const hkcp::DomainError&) {
            csv += ",nan,nan,nan,nan\n";  // row-level domain error marker
        }
    }
    write_output(out, csv);
    return 0;
}

int run_ode_check(const GridFlags& flags) {
    const hkcp::MetricProfile profile = flags.profile();
    double worst = 0.0;
    int evaluated = 0;
    for (double tau : flags.grid()) {
        const hkcp::ProfileValue pv = hkcp::profile_eval(tau, profile);
        worst = std::max(worst,
                         std::abs(hkcp::ode_residual(pv.f, pv.fprime, tau, profile) - 1.0));
        ++evaluated;
    }
    std::cout << "points=" << evaluated << "\n";
    std::cout << "max_abs_residual_minus_one=" << fmt17(worst) << "\n";
    return worst < 1e-9 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperkahler metrics on twisted cotangent bundles of CP^n: "
                 "evaluation, chart transitions, profile scans, and the "
                 "certification suite"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run the full certification suite");
    std::vector<int> v_n;
    std::vector<double> v_a;
    double v_sre = 1.0, v_sim = 0.0, v_perturb = 0.0;
    int v_samples = 50;
    std::uint64_t v_seed = 42;
    std::string v_out, v_format = "json";
    verify->add_option("--n", v_n, "base dimensions (repeatable)");
    verify->add_option("--s-re", v_sre, "real part of s");
    verify->add_option("--s-im", v_sim, "imaginary part of s");
    verify->add_option("--a", v_a, "family parameters (repeatable)");
    verify->add_option("--samples", v_samples, "samples per check and case");
    verify->add_option("--seed", v_seed, "suite seed");
    verify->add_option("--out", v_out, "output path (stdout when omitted)");
    verify->add_option("--format", v_format, "json or csv");
    verify->add_option("--perturb", v_perturb, "perturb family profiles (negative control)");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate invariants at a chart point");
    PointFlags e_flags;
    add_point_flags(eval, e_flags, true);

    // transition
    auto* trans = app.add_subcommand("transition", "re-express a point in another chart");
    PointFlags t_flags;
    int t_to_chart = 0;
    add_point_flags(trans, t_flags, false);
    trans->add_option("--to-chart", t_to_chart, "target chart index")->required();

    // scan
    auto* scan = app.add_subcommand("scan", "tabulate f, f', ODE residual over a tau grid");
    GridFlags s_flags;
    std::string s_out;
    add_grid_flags(scan, s_flags);
    scan->add_option("--out", s_out, "output CSV path (stdout when omitted)");

    // ode-check
    auto* ode = app.add_subcommand("ode-check", "max ODE residual deviation over a tau grid");
    GridFlags o_flags;
    add_grid_flags(ode, o_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed())
            return run_verify(v_n, v_sre, v_sim, v_a, v_samples, v_seed, v_out, v_format,
                              v_perturb);
        if (eval->parsed()) return run_eval(e_flags);
        if (trans->parsed()) return run_transition(t_flags, t_to_chart);
        if (scan->parsed()) return run_scan(s_flags, s_out);
        if (ode->parsed()) return run_ode_check(o_flags);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const hkcp::OverlapError& e) {
        std::cerr << "transition failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
