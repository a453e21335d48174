#include "flagproj/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <thread>

#include "flagproj/errors.hpp"

namespace flagproj {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void hash_field(std::uint64_t& h, const std::string& s) {
    h = fnv1a(std::to_string(h) + "|" + s);
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"combinatorics", "grassmann", "masses", "projections", "sphere-moments"};
}

const std::vector<std::string>& required_check_ids() {
    static const std::vector<std::string> ids = {
        "alpha-solves-moment-system",
        "binomial-contraction",
        "c-montecarlo-agreement",
        "c-recursion-symmetry",
        "codim1-exact-vs-direct",
        "estimator-four-way-agreement",
        "flag-mass-identities",
        "graded-product-parseval",
        "kernel-reproduces-projection",
        "projection-boundary-bound",
        "sphere-moment-closed-forms",
    };
    return ids;
}

std::vector<std::string> missing_check_ids() {
    std::vector<std::string> missing;
    for (const auto& id : required_check_ids()) {
        bool found = false;
        for (const auto& c : check_registry())
            if (c.id == id) found = true;
        if (!found) missing.push_back(id);
    }
    return missing;
}

int RunReport::count(const std::string& status) const {
    int n = 0;
    for (const auto& r : records)
        if (r.status == status) ++n;
    return n;
}

RunReport run_suite(const RunConfig& config, const std::string& suite) {
    if (suite != "all") {
        const auto names = suite_names();
        if (std::find(names.begin(), names.end(), suite) == names.end())
            throw OutOfRange("unknown suite: " + suite);
    }

    std::vector<const Check*> selected;
    for (const auto& c : check_registry())
        if (suite == "all" || c.suite == suite) selected.push_back(&c);

    RunReport report;
    report.config = config;
    report.suite = suite;
    report.records.resize(selected.size());

    const auto run_one = [&](size_t i) {
        const Check& c = *selected[i];
        CheckRecord& rec = report.records[i];
        rec.check_id = c.id;
        rec.suite = c.suite;
        rec.seed = config.seed;
        RandomStream rng(config.seed, fnv1a(c.id));
        const auto start = std::chrono::steady_clock::now();
        try {
            c.fn(config, rng, rec);
        } catch (const std::exception& e) {
            rec.status = "fail";
            rec.detail = std::string("exception: ") + e.what();
        }
        rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    const int workers = std::max(1, config.workers);
    if (workers == 1 || selected.size() < 2) {
        for (size_t i = 0; i < selected.size(); ++i) run_one(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        const size_t nthreads = std::min<size_t>(workers, selected.size());
        pool.reserve(nthreads);
        for (size_t t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < selected.size(); i = next.fetch_add(1))
                    run_one(i);
            });
        for (auto& t : pool) t.join();
    }
    return report;
}

std::string report_digest(const RunReport& report) {
    std::uint64_t h = fnv1a("flagproj-report/1");
    hash_field(h, std::to_string(report.config.seed));
    hash_field(h, std::to_string(report.config.samples_per_face));
    hash_field(h, std::to_string(report.config.grassmannian_samples));
    hash_field(h, std::to_string(report.config.sphere_samples));
    hash_field(h, std::to_string(report.config.d_min));
    hash_field(h, std::to_string(report.config.d_max));
    hash_field(h, g17(report.config.z_threshold));

    std::vector<const CheckRecord*> ordered;
    for (const auto& r : report.records) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const CheckRecord* a, const CheckRecord* b) { return a->check_id < b->check_id; });
    for (const CheckRecord* r : ordered) {
        hash_field(h, r->check_id);
        hash_field(h, r->suite);
        hash_field(h, r->status);
        hash_field(h, g17(r->observed));
        hash_field(h, g17(r->expected));
        hash_field(h, g17(r->tolerance));
        hash_field(h, g17(r->std_err));
        hash_field(h, std::to_string(r->n));
        hash_field(h, std::to_string(r->seed));
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string report_to_json(const RunReport& report) {
    std::vector<const CheckRecord*> ordered;
    for (const auto& r : report.records) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const CheckRecord* a, const CheckRecord* b) { return a->check_id < b->check_id; });

    json checks = json::array();
    for (const CheckRecord* r : ordered) {
        checks.push_back({
            {"check_id", r->check_id},
            {"suite", r->suite},
            {"status", r->status},
            {"detail", r->detail},
            {"observed", r->observed},
            {"expected", r->expected},
            {"tolerance", r->tolerance},
            {"stderr", r->std_err},
            {"n", r->n},
            {"seed", r->seed},
            {"wall_time", r->wall_time},
        });
    }
    json doc = {
        {"schema", "flagproj-report/1"},
        {"kind", "verification"},
        {"suite", report.suite},
        {"config",
         {
             {"seed", report.config.seed},
             {"samples_per_face", report.config.samples_per_face},
             {"grassmannian_samples", report.config.grassmannian_samples},
             {"sphere_samples", report.config.sphere_samples},
             {"d_min", report.config.d_min},
             {"d_max", report.config.d_max},
             {"z_threshold", report.config.z_threshold},
             {"workers", report.config.workers},
         }},
        {"summary",
         {
             {"pass", report.count("pass")},
             {"fail", report.count("fail")},
             {"skip", report.count("skip")},
         }},
        {"digest", report_digest(report)},
        {"checks", std::move(checks)},
    };
    return doc.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
    const json doc = json::parse(text);
    if (!doc.is_object() || doc.value("schema", "") != "flagproj-report/1")
        throw std::runtime_error("not a flagproj-report/1 document");
    if (doc.value("kind", "verification") != "verification")
        throw std::runtime_error("not a verification report");
    RunReport report;
    report.suite = doc.value("suite", "all");
    const json& cfg = doc.at("config");
    report.config.seed = cfg.at("seed").get<std::uint64_t>();
    report.config.samples_per_face = cfg.at("samples_per_face").get<long>();
    report.config.grassmannian_samples = cfg.at("grassmannian_samples").get<long>();
    report.config.sphere_samples = cfg.at("sphere_samples").get<long>();
    report.config.d_min = cfg.at("d_min").get<int>();
    report.config.d_max = cfg.at("d_max").get<int>();
    report.config.z_threshold = cfg.at("z_threshold").get<double>();
    report.config.workers = cfg.at("workers").get<int>();
    for (const auto& c : doc.at("checks")) {
        CheckRecord r;
        r.check_id = c.at("check_id").get<std::string>();
        r.suite = c.at("suite").get<std::string>();
        r.status = c.at("status").get<std::string>();
        r.detail = c.value("detail", "");
        r.observed = c.at("observed").get<double>();
        r.expected = c.at("expected").get<double>();
        r.tolerance = c.at("tolerance").get<double>();
        r.std_err = c.at("stderr").get<double>();
        r.n = c.at("n").get<std::int64_t>();
        r.seed = c.at("seed").get<std::uint64_t>();
        r.wall_time = c.at("wall_time").get<double>();
        report.records.push_back(std::move(r));
    }
    return report;
}

RunReport merge_reports(const std::vector<RunReport>& parts) {
    if (parts.empty()) throw DimMismatch("nothing to merge");
    RunReport merged;
    merged.config = parts[0].config;
    merged.suite = parts.size() == 1 ? parts[0].suite : "merged";
    for (const auto& part : parts) {
        const RunConfig& a = merged.config;
        const RunConfig& b = part.config;
        const bool same = a.seed == b.seed && a.samples_per_face == b.samples_per_face &&
                          a.grassmannian_samples == b.grassmannian_samples &&
                          a.sphere_samples == b.sphere_samples && a.d_min == b.d_min &&
                          a.d_max == b.d_max && a.z_threshold == b.z_threshold;
        if (!same) throw DimMismatch("reports were produced with different configs");
        for (const auto& r : part.records) {
            for (const auto& existing : merged.records)
                if (existing.check_id == r.check_id)
                    throw DimMismatch("duplicate check id in merge: " + r.check_id);
            merged.records.push_back(r);
        }
    }
    std::sort(merged.records.begin(), merged.records.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.check_id < b.check_id; });
    return merged;
}

int exit_code_for(const RunReport& report) { return report.all_pass() ? 0 : 1; }

}  // namespace flagproj
