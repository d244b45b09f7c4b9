#pragma once

#include <span>
#include <string>
#include <vector>

#include "hkcp/fd.hpp"
#include "hkcp/hyperkahler.hpp"
#include "hkcp/metric.hpp"
#include "hkcp/rng.hpp"

namespace hkcp {

struct Tolerances {
    double fd_first = 1e-6;          // jet gradient vs finite differences
    double fd_second = 1e-5;         // jet Hessian, transition Jacobian, gluing
    double identity = 1e-9;          // closed-form identities
    double defect_negative = 1e-3;   // symplectic defect must exceed this when n >= 2, a > 0
};

struct SuiteConfig {
    std::vector<int> n_values{1, 2};
    Complex s{1.0, 0.0};
    std::vector<double> a_values{0.0, 1.0};
    int samples = 50;
    std::uint64_t seed = 42;
    Tolerances tol;
    double lagrangian_exclusion = 1e-3;  // relative to tau0
    double profile_perturbation = 0.0;   // nonzero for negative-control runs
};

/// One measurement. `pass` is authoritative; for most checks it means
/// value < threshold, for must-exceed checks (ids ending in `_negative` or
/// `_witness`) it means value > threshold.
struct CheckRecord {
    std::string check_id;
    int n = 0;            // model dimension, or the vector length for rank-2 checks
    double a = 0.0;       // NaN when the check does not involve a profile
    int sample = 0;
    std::string point_digest;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string timestamp;  // header only; the body below it is reproducible
    std::string tool_version;
    std::string schema_version;
    SuiteConfig config;
    std::vector<CheckRecord> records;
};

struct CheckInfo {
    const char* id;
    const char* description;
    bool must_exceed;  // pass means value > threshold
};

/// The static registry of every check the suite runs, in execution order.
std::span<const CheckInfo> check_registry();

/// Runs the whole registry for the given configuration. Individual failures
/// become records, never exceptions; the run is deterministic per seed.
VerificationReport run_suite(const SuiteConfig& config);

bool all_passed(const VerificationReport& report);

/// Full report (header + body) as JSON text.
std::string report_to_json(const VerificationReport& report);

/// Body only, used for byte-identity comparisons across runs.
std::string report_body_json(const VerificationReport& report);

/// One row per record: check_id,n,a,seed,sample,value,threshold,pass
std::string report_to_csv(const VerificationReport& report);

// Seeded sampling shared by the suite, the tests, and the CLI.

/// Chart point with uniform chart index and unit complex Gaussian coordinates.
ChartPoint sample_point(SeededRng& rng, const ModelParams& params);

/// As sample_point, but rejects points inside the profile's exclusion band
/// (and resamples) so that the profile is evaluable at the result.
ChartPoint sample_point_in_domain(SeededRng& rng, const ModelParams& params,
                                  const MetricProfile& profile);

/// Random Hermitian invertible matrix of size dim (resamples when singular).
CMatrix sample_hermitian_invertible(SeededRng& rng, int dim);

/// Digest of a point's coordinates for report records.
std::string point_digest(const ChartPoint& p);

}  // namespace hkcp
