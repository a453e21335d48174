#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "flagproj/random.hpp"

namespace flagproj {

/// Knobs of a verification run. Defaults match the documented acceptance
/// tolerances and sample counts; shrinking them (for quick smoke runs)
/// shrinks the sweeps honestly rather than loosening tolerances.
struct RunConfig {
    std::uint64_t seed = 61862;
    long samples_per_face = 100000;      // cone proposals per face for the estimators
    long grassmannian_samples = 100000;  // Haar subspace draws for moment checks
    long sphere_samples = 1000000;       // sphere draws for the moment formulas
    int d_min = 0;                       // dimension sweep lower bound
    int d_max = 8;                       // dimension sweep upper bound
    double z_threshold = 3.0;            // acceptance band in standard errors
    int workers = 1;
};

/// One verification check outcome. Exact checks report failure counts
/// (observed vs expected 0, tolerance 0); statistical checks report the
/// worst z-score (tolerance = z threshold); absolute-error checks report
/// the worst error. Status is "pass", "fail" or "skip".
struct CheckRecord {
    std::string check_id;
    std::string suite;
    std::string status = "pass";
    std::string detail;  // worst case / failure description, empty if clean
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    double std_err = 0.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;  // seconds; excluded from the determinism digest
};

using CheckFn = std::function<void(const RunConfig&, RandomStream&, CheckRecord&)>;

struct Check {
    std::string id;
    std::string suite;
    CheckFn fn;
};

/// All registered checks, sorted by id. Each check owns an independent
/// random stream derived from (config seed, fnv1a(check id)), so the
/// registry can run in any order or concurrently with identical results.
const std::vector<Check>& check_registry();

/// Suite names accepted by run_suite (excluding "all").
std::vector<std::string> suite_names();

/// Check ids that must exist for the verification suite to be considered
/// complete, one per acceptance criterion.
const std::vector<std::string>& required_check_ids();

/// Required ids missing from the registry; empty means full coverage.
std::vector<std::string> missing_check_ids();

struct RunReport {
    RunConfig config;
    std::string suite;  // suite that was run, or "merged"
    std::vector<CheckRecord> records;

    [[nodiscard]] int count(const std::string& status) const;
    [[nodiscard]] bool all_pass() const { return count("fail") == 0; }
};

/// Run one suite (or "all"). Throws OutOfRange for unknown suite names;
/// check failures are records, never exceptions.
RunReport run_suite(const RunConfig& config, const std::string& suite);

/// FNV-1a 64-bit over a byte string.
std::uint64_t fnv1a(const std::string& bytes);

/// Order-independent determinism fingerprint of a report: FNV-1a over the
/// config and every record with floats rendered at 17 significant digits,
/// wall_time excluded. Formatted as 16 hex digits.
std::string report_digest(const RunReport& report);

/// Report JSON, schema "flagproj-report/1". Records are ordered by check_id.
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

/// Merge partial-suite reports produced with the same config (worker count
/// may differ). Throws DimMismatch on conflicting configs or duplicate
/// check ids.
RunReport merge_reports(const std::vector<RunReport>& parts);

/// CLI exit code for a verification report: 0 when no record failed, 1
/// otherwise.
int exit_code_for(const RunReport& report);

}  // namespace flagproj
