#include "flagproj/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "flagproj/errors.hpp"
#include "flagproj/flags.hpp"
#include "flagproj/harness.hpp"
#include "flagproj/polytope_io.hpp"

namespace flagproj {

namespace {

using nlohmann::json;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

Polytope build_shape(const std::string& shape, int dim, std::uint64_t seed) {
    if (dim < 3 || dim > 6) throw OutOfRange("dimension must be between 3 and 6");
    if (shape == "cube") return make_cube(dim);
    if (shape == "simplex") return make_simplex(dim);
    if (shape == "crosspolytope") return make_cross_polytope(dim);
    if (shape == "random") {
        RandomStream rng(seed, fnv1a("gen-polytope"));
        return make_random_polytope(dim, rng);
    }
    throw OutOfRange("unknown shape: " + shape);
}

std::vector<Eigen::VectorXd> parse_basis(const std::string& text, int dim) {
    std::vector<Eigen::VectorXd> vectors;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::vector<double> vals;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) vals.push_back(std::stod(cell));
        if (static_cast<int>(vals.size()) != dim)
            throw OutOfRange("basis vector length does not match the polytope dimension");
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v(i) = vals[static_cast<size_t>(i)];
        vectors.push_back(std::move(v));
    }
    if (vectors.empty()) throw OutOfRange("empty basis");
    return vectors;
}

void parse_dims(const std::string& text, RunConfig& cfg) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) {
        cfg.d_min = cfg.d_max = std::stoi(text);
    } else {
        cfg.d_min = std::stoi(text.substr(0, sep));
        cfg.d_max = std::stoi(text.substr(sep + 2));
    }
    if (cfg.d_min < 0 || cfg.d_max < cfg.d_min) throw OutOfRange("bad dimension range");
}

json estimate_entry(const MCEstimate& e) {
    return {{"status", "ok"}, {"value", e.mean}, {"stderr", e.std_err}, {"n", e.n}};
}

int cmd_project(const std::string& poly_path, int k, std::uint64_t seed,
                const std::string& basis_text, long samples, const std::string& out_path) {
    const Polytope p = load_polytope(poly_path);
    const int d = p.dim();
    if (k < 1 || k > d - 1) throw OutOfRange("k must be between 1 and dim-1");

    RandomStream rng(seed, fnv1a("project"));
    Subspace e = Subspace::zero(d);
    std::string source;
    if (basis_text.empty()) {
        source = "random";
        e = sample_general_position_subspace(p, k, rng);  // throws after 100 attempts
    } else {
        source = "explicit";
        e = orthonormalize(parse_basis(basis_text, d));
        if (e.dim() != k) throw OutOfRange("basis spans a subspace of the wrong dimension");
    }
    const bool gp = general_position(p, k, e);

    json estimates;
    const MCEstimate direct{project_and_volume(p, e), 0.0, 0, seed};
    estimates["direct"] = {{"status", "ok"}, {"value", direct.mean}};

    std::optional<PairEstimate> pair;
    std::optional<MCEstimate> weighted;
    if (gp) {
        RandomStream r1 = rng.substream(1);
        pair = v_k_face_and_conormal(p, e, samples, r1);
    }
    if (gp || k >= d - 2) {
        RandomStream r2 = rng.substream(2);
        weighted = v_k_weighted_flags(p, e, samples, r2);
    }
    if (pair) {
        estimates["face_sum"] = estimate_entry(pair->face_sum);
        estimates["conormal_flags"] = estimate_entry(pair->conormal);
    } else {
        estimates["face_sum"] = {{"status", "general-position-violated"}};
        estimates["conormal_flags"] = {{"status", "general-position-violated"}};
    }
    estimates["weighted_flags"] =
        weighted ? estimate_entry(*weighted) : json{{"status", "general-position-violated"}};
    if (k == d - 1) {
        const Eigen::VectorXd x = complement(e).basis().col(0);
        estimates["codim1_exact"] = {{"status", "ok"}, {"value", v_codim1_exact(p, x)}};
    }

    json zs;
    if (pair) {
        zs["face_sum_vs_direct"] = pair->face_sum.z_against(direct.mean);
        zs["conormal_flags_vs_direct"] = pair->conormal.z_against(direct.mean);
        zs["face_sum_vs_conormal_flags"] = z_between(pair->face_sum, pair->conormal);
    }
    if (weighted) zs["weighted_flags_vs_direct"] = weighted->z_against(direct.mean);
    if (pair && weighted) {
        zs["face_sum_vs_weighted_flags"] = z_between(pair->face_sum, *weighted);
        zs["conormal_flags_vs_weighted_flags"] = z_between(pair->conormal, *weighted);
    }

    json basis_rows = json::array();
    for (int c = 0; c < e.dim(); ++c) {
        json row = json::array();
        for (int r = 0; r < d; ++r) row.push_back(e.basis()(r, c));
        basis_rows.push_back(std::move(row));
    }

    json doc = {
        {"schema", "flagproj-report/1"},
        {"kind", "projection"},
        {"polytope", {{"dim", d}, {"vertices", p.vertices().size()}}},
        {"k", k},
        {"seed", seed},
        {"samples_per_face", samples},
        {"subspace", {{"source", source}, {"general_position", gp}, {"basis", basis_rows}}},
        {"estimates", std::move(estimates)},
        {"z_scores", std::move(zs)},
    };
    if (pair) doc["pair_max_rel_difference"] = pair->max_rel_difference;
    emit(doc.dump(2) + "\n", out_path);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"projection functions of convex polytopes: estimators and verification"};
    app.require_subcommand(1);

    // gen-polytope
    auto* gen = app.add_subcommand("gen-polytope", "write a polytope fixture as JSON");
    std::string gen_shape = "cube", gen_out;
    int gen_dim = 3;
    std::uint64_t gen_seed = 61862;
    gen->add_option("--shape", gen_shape, "cube|simplex|crosspolytope|random")->required();
    gen->add_option("--dim", gen_dim, "ambient dimension, 3..6")->required();
    gen->add_option("--seed", gen_seed, "random-shape seed");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // project
    auto* proj = app.add_subcommand("project", "estimate the projection function of a polytope");
    std::string proj_poly, proj_basis, proj_out;
    int proj_k = 1;
    std::uint64_t proj_seed = 61862;
    long proj_samples = 100000;
    proj->add_option("--polytope", proj_poly, "polytope JSON file")->required();
    proj->add_option("--k", proj_k, "projection dimension, 1..dim-1")->required();
    proj->add_option("--seed", proj_seed, "seed for the subspace draw and the estimators");
    proj->add_option("--basis", proj_basis,
                     "explicit spanning vectors \"x1,...,xd;y1,...,yd\" (otherwise random)");
    proj->add_option("--samples", proj_samples, "cone proposals per face");
    proj->add_option("--out", proj_out, "output path (default stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string ver_suite = "all", ver_dims, ver_out;
    RunConfig cfg;
    ver->add_option("--suite", ver_suite, "combinatorics|grassmann|masses|projections|sphere-moments|all");
    ver->add_option("--seed", cfg.seed, "run seed");
    ver->add_option("--samples", cfg.samples_per_face, "cone proposals per face");
    ver->add_option("--grassmannian-samples", cfg.grassmannian_samples, "Haar subspace draws");
    ver->add_option("--sphere-samples", cfg.sphere_samples, "sphere draws");
    ver->add_option("--dims", ver_dims, "dimension range LO..HI (or a single dimension)");
    ver->add_option("--workers", cfg.workers, "parallel check workers");
    ver->add_option("--out", ver_out, "report path (default stdout)");

    // report-merge
    auto* mrg = app.add_subcommand("report-merge", "merge partial verification reports");
    std::vector<std::string> mrg_inputs;
    std::string mrg_out;
    mrg->add_option("inputs", mrg_inputs, "report JSON files")->required()->expected(-1);
    mrg->add_option("--out", mrg_out, "merged report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            const Polytope p = build_shape(gen_shape, gen_dim, gen_seed);
            emit(polytope_to_json(p), gen_out);
            return 0;
        }
        if (proj->parsed())
            return cmd_project(proj_poly, proj_k, proj_seed, proj_basis, proj_samples, proj_out);
        if (ver->parsed()) {
            if (!ver_dims.empty()) parse_dims(ver_dims, cfg);
            if (cfg.samples_per_face < 1 || cfg.grassmannian_samples < 1 ||
                cfg.sphere_samples < 1 || cfg.workers < 1)
                throw OutOfRange("sample and worker counts must be positive");
            const RunReport report = run_suite(cfg, ver_suite);
            emit(report_to_json(report), ver_out);
            std::fprintf(stderr, "suite %s: %d pass, %d fail, %d skip (digest %s)\n",
                         ver_suite.c_str(), report.count("pass"), report.count("fail"),
                         report.count("skip"), report_digest(report).c_str());
            return exit_code_for(report);
        }
        if (mrg->parsed()) {
            std::vector<RunReport> parts;
            parts.reserve(mrg_inputs.size());
            for (const auto& path : mrg_inputs)
                parts.push_back(report_from_json(read_text_file(path)));
            const RunReport merged = merge_reports(parts);
            emit(report_to_json(merged), mrg_out);
            return exit_code_for(merged);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}

}  // namespace flagproj
