#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "flagproj/cli.hpp"
#include "flagproj/errors.hpp"
#include "flagproj/harness.hpp"
#include "flagproj/polytope_io.hpp"

using namespace flagproj;

namespace {

// Tiny sweep so harness plumbing tests stay fast; the acceptance binary runs
// the documented defaults.
RunConfig tiny_config() {
    RunConfig c;
    c.seed = 99;
    c.samples_per_face = 200;
    c.grassmannian_samples = 2000;
    c.sphere_samples = 5000;
    c.d_max = 3;
    return c;
}

int run(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("flagproj");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("flagproj-test-" + name);
}

}  // namespace

TEST_CASE("registry covers every required check exactly once") {
    CHECK(missing_check_ids().empty());
    const auto& checks = check_registry();
    CHECK(checks.size() == required_check_ids().size());
    for (size_t i = 1; i < checks.size(); ++i) CHECK(checks[i - 1].id < checks[i].id);

    const auto suites = suite_names();
    CHECK(!suites.empty());
    for (const auto& c : checks) {
        bool known = false;
        for (const auto& s : suites) known = known || s == c.suite;
        CHECK(known);
    }
}

TEST_CASE("unknown suite names are rejected") {
    CHECK_THROWS_AS(run_suite(tiny_config(), "no-such-suite"), OutOfRange);
}

TEST_CASE("suite runs are deterministic") {
    const auto cfg = tiny_config();
    const auto r1 = run_suite(cfg, "combinatorics");
    const auto r2 = run_suite(cfg, "combinatorics");
    CHECK(r1.records.size() == 4);
    CHECK(report_digest(r1) == report_digest(r2));
    for (size_t i = 0; i < r1.records.size(); ++i) {
        CHECK(r1.records[i].check_id == r2.records[i].check_id);
        CHECK(r1.records[i].observed == r2.records[i].observed);
        CHECK(r1.records[i].n == r2.records[i].n);
    }
}

TEST_CASE("digest ignores wall time but sees results") {
    auto r = run_suite(tiny_config(), "masses");
    const auto base = report_digest(r);
    r.records[0].wall_time += 123.0;
    CHECK(report_digest(r) == base);
    r.records[0].observed += 1.0;
    CHECK(report_digest(r) != base);
}

TEST_CASE("report JSON round trip") {
    const auto r = run_suite(tiny_config(), "sphere-moments");
    const auto text = report_to_json(r);

    const auto parsed = nlohmann::json::parse(text);
    CHECK(parsed["schema"] == "flagproj-report/1");
    CHECK(parsed["kind"] == "verification");
    CHECK(parsed["digest"] == report_digest(r));

    const auto back = report_from_json(text);
    CHECK(back.suite == r.suite);
    CHECK(back.config.seed == r.config.seed);
    CHECK(back.records.size() == r.records.size());
    CHECK(report_digest(back) == report_digest(r));
}

TEST_CASE("merging partial reports") {
    const auto cfg = tiny_config();
    const auto a = run_suite(cfg, "combinatorics");
    const auto b = run_suite(cfg, "masses");
    const auto merged = merge_reports({a, b});
    CHECK(merged.suite == "merged");
    CHECK(merged.records.size() == a.records.size() + b.records.size());
    CHECK(merged.all_pass());

    CHECK_THROWS_AS(merge_reports({a, a}), DimMismatch);
    auto other = b;
    other.config.seed += 1;
    CHECK_THROWS_AS(merge_reports({a, other}), DimMismatch);
    // differing worker counts are fine: same results, different scheduling
    auto workers = b;
    workers.config.workers = 4;
    CHECK_NOTHROW(merge_reports({a, workers}));
}

TEST_CASE("exit codes reflect failures") {
    auto r = run_suite(tiny_config(), "masses");
    CHECK(exit_code_for(r) == 0);
    CheckRecord fail;
    fail.check_id = "synthetic";
    fail.status = "fail";
    r.records.push_back(fail);
    CHECK(!r.all_pass());
    CHECK(exit_code_for(r) == 1);
}

TEST_CASE("worker pools reproduce the single-threaded run") {
    auto cfg = tiny_config();
    const auto serial = run_suite(cfg, "combinatorics");
    cfg.workers = 3;
    const auto pooled = run_suite(cfg, "combinatorics");
    CHECK(report_digest(serial) == report_digest(pooled));
}

TEST_CASE("command line: generate, project, verify, merge") {
    const auto poly_path = temp_path("cube.json");
    const auto proj_path = temp_path("proj.json");
    const auto proj_path2 = temp_path("proj2.json");
    const auto rep_a = temp_path("rep-a.json");
    const auto rep_b = temp_path("rep-b.json");
    const auto rep_m = temp_path("rep-m.json");

    CHECK(run({"gen-polytope", "--shape", "cube", "--dim", "3", "--out", poly_path.string()}) ==
          0);
    const auto cube = load_polytope(poly_path.string());
    CHECK(cube.dim() == 3);
    CHECK(cube.vertices().size() == 8);

    CHECK(run({"project", "--polytope", poly_path.string(), "--k", "2", "--seed", "11",
               "--samples", "2000", "--out", proj_path.string()}) == 0);
    const auto doc = nlohmann::json::parse(read_text_file(proj_path.string()));
    CHECK(doc["schema"] == "flagproj-report/1");
    CHECK(doc["kind"] == "projection");
    CHECK(doc["k"] == 2);
    CHECK(doc["estimates"]["direct"]["value"].get<double>() > 0.0);
    CHECK(doc["estimates"]["face_sum"]["status"] == "ok");
    CHECK(doc["z_scores"].size() > 0);
    CHECK(doc["pair_max_rel_difference"].get<double>() <= 1e-10);

    // repeated runs are byte-identical
    CHECK(run({"project", "--polytope", poly_path.string(), "--k", "2", "--seed", "11",
               "--samples", "2000", "--out", proj_path2.string()}) == 0);
    CHECK(read_text_file(proj_path.string()) == read_text_file(proj_path2.string()));

    // explicit basis: axis plane, not transversal at k=2, still projects
    CHECK(run({"project", "--polytope", poly_path.string(), "--k", "2", "--basis",
               "1,0,0;0,1,0", "--samples", "1000", "--out", proj_path2.string()}) == 0);
    const auto axis = nlohmann::json::parse(read_text_file(proj_path2.string()));
    CHECK(axis["subspace"]["general_position"] == false);
    CHECK(axis["estimates"]["face_sum"]["status"] == "general-position-violated");
    CHECK(axis["estimates"]["direct"]["value"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-9));

    CHECK(run({"verify", "--suite", "combinatorics", "--seed", "99", "--dims", "0..3",
               "--samples", "2000", "--grassmannian-samples", "2000", "--out",
               rep_a.string()}) == 0);
    CHECK(run({"verify", "--suite", "masses", "--seed", "98", "--dims", "0..3", "--samples",
               "2000", "--grassmannian-samples", "2000", "--out", rep_b.string()}) == 0);
    const auto rep = report_from_json(read_text_file(rep_a.string()));
    CHECK(rep.records.size() == 4);
    CHECK(rep.all_pass());

    // merge rejects mismatched configs (different seeds) with exit code 2
    CHECK(run({"report-merge", rep_a.string(), rep_b.string(), "--out", rep_m.string()}) == 2);
    CHECK(run({"verify", "--suite", "masses", "--seed", "99", "--dims", "0..3", "--samples",
               "2000", "--grassmannian-samples", "2000", "--out", rep_b.string()}) == 0);
    CHECK(run({"report-merge", rep_a.string(), rep_b.string(), "--out", rep_m.string()}) == 0);
    const auto merged = report_from_json(read_text_file(rep_m.string()));
    CHECK(merged.suite == "merged");
    CHECK(merged.records.size() == 5);

    for (const auto& p : {poly_path, proj_path, proj_path2, rep_a, rep_b, rep_m})
        std::filesystem::remove(p);
}

TEST_CASE("command line: usage errors") {
    CHECK(run({"no-such-subcommand"}) == 2);
    CHECK(run({"gen-polytope", "--shape", "dodecahedron", "--dim", "3"}) == 2);
    CHECK(run({"gen-polytope", "--dim", "3"}) == 2);  // missing required --shape
    CHECK(run({"project", "--polytope", "/nonexistent.json", "--k", "1"}) == 2);
    CHECK(run({"verify", "--suite", "no-such-suite"}) == 2);
    CHECK(run({"verify", "--samples", "0"}) == 2);
    CHECK(run({"report-merge"}) == 2);
}
