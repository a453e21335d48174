// Acceptance gate: runs every registered verification check at the default
// configuration and prints one line per check. Exit code 0 only when all of
// them pass.

#include <cstdio>

#include "flagproj/harness.hpp"

int main() {
    using namespace flagproj;

    const auto missing = missing_check_ids();
    if (!missing.empty()) {
        for (const auto& id : missing) std::fprintf(stderr, "MISSING CHECK: %s\n", id.c_str());
        return 1;
    }
    std::printf("coverage: %zu/%zu required checks registered\n", check_registry().size(),
                required_check_ids().size());

    const RunConfig config;  // documented defaults
    std::printf("seed=%llu samples_per_face=%ld grassmannian=%ld sphere=%ld z=%.1f\n\n",
                static_cast<unsigned long long>(config.seed), config.samples_per_face,
                config.grassmannian_samples, config.sphere_samples, config.z_threshold);

    const auto report = run_suite(config, "all");
    for (const auto& r : report.records) {
        std::printf("%-4s %-32s observed=%-12.6g expected=%-12.6g tol=%-8.3g (%.1fs)\n",
                    r.status == "pass" ? "PASS" : "FAIL", r.check_id.c_str(), r.observed,
                    r.expected, r.tolerance, r.wall_time);
        if (!r.detail.empty()) std::printf("     %s\n", r.detail.c_str());
        std::fflush(stdout);
    }

    std::printf("\n%d pass, %d fail (digest %s)\n", report.count("pass"),
                report.count("fail"), report_digest(report).c_str());
    return exit_code_for(report);
}
