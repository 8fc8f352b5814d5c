// edgekit: cuspidal-edge invariants toolkit.
//
//   edgekit invariants  --expr "map(u, v^2, v^3)" [--at u] [--json]
//   edgekit normal-form --preset fig1-ks [--json]
//   edgekit verify      [--random K] [--seed S] [--json]
//   edgekit mesh        --preset fig1-kc --out mesh.obj
//                       [--grid 40x40] [--range umin:umax:vmin:vmax]
//
// Germ sources (--expr | --table | --preset) are mutually exclusive.
// Exit codes: 0 success, 1 parse/classification errors, 2 verification
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "edgekit/mesh.hpp"
#include "edgekit/presets.hpp"
#include "edgekit/report.hpp"
#include "edgekit/verify.hpp"

namespace {

using namespace edgekit;

struct SourceFlags {
    std::string expr, table, preset;
    int order = 6;

    void attach(CLI::App* cmd) {
        cmd->add_option("--expr", expr,
                        "germ as three expressions: map(e1,e2,e3) or "
                        "e1; e2; e3");
        cmd->add_option("--table", table, "path to a coefficient-table JSON");
        cmd->add_option("--preset", preset, "built-in germ name");
        cmd->add_option("--order", order, "jet order (default 6)");
    }

    SurfaceGerm load() const {
        const int given =
            (expr.empty() ? 0 : 1) + (table.empty() ? 0 : 1) +
            (preset.empty() ? 0 : 1);
        if (given != 1)
            throw std::invalid_argument(
                "exactly one of --expr, --table, --preset is required");
        if (!expr.empty()) return SurfaceGerm::from_expr_string(expr, order);
        if (!preset.empty()) return preset_germ(preset, order);
        std::ifstream in(table);
        if (!in)
            throw std::invalid_argument("cannot open table file " + table);
        std::ostringstream buf;
        buf << in.rdbuf();
        return SurfaceGerm::from_table(buf.str());
    }
};

int run_invariants(const SourceFlags& src, double at, bool json_out) {
    const SurfaceGerm g = src.load();
    const Report r = make_report(g, at);
    if (json_out)
        std::cout << report_to_json(r);
    else
        std::cout << report_to_text(r);
    if (r.classification.kind != Classification::Kind::cuspidal_edge) {
        std::cerr << "error: " << r.error << "\n";
        return 1;
    }
    return 0;
}

int run_normal_form(const SourceFlags& src, bool json_out) {
    const SurfaceGerm g = src.load();
    const NormalFormCoefficients nf = reduce(g);
    if (json_out) {
        nlohmann::json j;
        j["schema"] = kReportSchema;
        j["version"] = kToolVersion;
        j["a20"] = nf.a20;
        j["a30"] = nf.a30;
        j["b20"] = nf.b20;
        j["b30"] = nf.b30;
        j["b12"] = nf.b12;
        j["b03"] = nf.b03;
        j["edge_reversed"] = nf.edge_reversed;
        j["trusted"] = nf.trusted;
        nlohmann::json log = nlohmann::json::array();
        for (const Transform& t : nf.transform_log)
            log.push_back({{"kind", t.kind == Transform::Kind::
                                                source_substitution
                                        ? "source_substitution"
                                        : "target_rotation"},
                           {"label", t.label}});
        j["transform_log"] = log;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf(
            "a20 = %.12g\na30 = %.12g\nb20 = %.12g\nb30 = %.12g\n"
            "b12 = %.12g\nb03 = %.12g\n",
            nf.a20, nf.a30, nf.b20, nf.b30, nf.b12, nf.b03);
        if (nf.edge_reversed) std::printf("edge reversed during reduction\n");
        std::printf("trusted degree %d\ntransform log:\n%s", nf.trusted,
                    transform_log_to_text(nf).c_str());
    }
    return 0;
}

int run_verify(const SourceFlags& src, int random_count, std::uint64_t seed,
               bool json_out) {
    std::vector<VerifyItem> items;
    const bool have_source =
        !src.expr.empty() || !src.table.empty() || !src.preset.empty();
    if (have_source) {
        items = verify_germ(src.load(), "germ");
    } else {
        VerifyOptions opt;
        opt.random_count = random_count;
        opt.seed = seed;
        items = verify_corpus(opt);
    }
    int failures = 0;
    if (json_out) {
        nlohmann::json j;
        j["schema"] = kReportSchema;
        j["version"] = kToolVersion;
        j["seed"] = seed;
        nlohmann::json arr = nlohmann::json::array();
        for (const VerifyItem& it : items) {
            arr.push_back({{"name", it.name},
                           {"passed", it.passed},
                           {"residual", it.residual},
                           {"tolerance", it.tolerance}});
            failures += it.passed ? 0 : 1;
        }
        j["checks"] = arr;
        j["failures"] = failures;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const VerifyItem& it : items) {
            std::printf("[%s] %s  (residual %.3g, tolerance %.3g)\n",
                        it.passed ? "PASS" : "FAIL", it.name.c_str(),
                        it.residual, it.tolerance);
            failures += it.passed ? 0 : 1;
        }
        std::printf("%zu checks, %d failures\n", items.size(), failures);
    }
    return failures == 0 ? 0 : 2;
}

int run_mesh(const SourceFlags& src, const std::string& out,
             const std::string& grid, const std::string& range) {
    MeshOptions opt;
    if (!grid.empty() &&
        std::sscanf(grid.c_str(), "%dx%d", &opt.nu, &opt.nv) != 2)
        throw std::invalid_argument("bad --grid, expected <nu>x<nv>");
    if (!range.empty() &&
        std::sscanf(range.c_str(), "%lf:%lf:%lf:%lf", &opt.umin, &opt.umax,
                    &opt.vmin, &opt.vmax) != 4)
        throw std::invalid_argument(
            "bad --range, expected umin:umax:vmin:vmax");

    const SurfaceGerm g = src.load();
    std::string edge;
    const std::string obj = export_mesh(g, opt, &edge);

    std::ofstream fo(out);
    if (!fo) throw std::runtime_error("cannot write " + out);
    fo << obj;

    std::string edge_path = out;
    const auto dot = edge_path.find_last_of('.');
    if (dot == std::string::npos)
        edge_path += "_edge.obj";
    else
        edge_path.insert(dot, "_edge");
    std::ofstream fe(edge_path);
    if (!fe) throw std::runtime_error("cannot write " + edge_path);
    fe << edge;

    std::printf("wrote %s (%dx%d vertices) and %s\n", out.c_str(), opt.nu,
                opt.nv, edge_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuspidal-edge invariants toolkit"};
    app.require_subcommand(1);

    SourceFlags src;
    double at = 0;
    bool json_out = false;
    int random_count = 0;
    std::uint64_t seed = 1;
    std::string out_path, grid, range;

    CLI::App* inv = app.add_subcommand(
        "invariants", "classification, invariants, and contact report");
    src.attach(inv);
    inv->add_option("--at", at, "edge coordinate u (default 0)");
    inv->add_flag("--json", json_out, "machine-readable output");

    CLI::App* nf = app.add_subcommand(
        "normal-form", "reduce to the cubic normal form");
    src.attach(nf);
    nf->add_flag("--json", json_out, "machine-readable output");

    CLI::App* ver = app.add_subcommand(
        "verify", "run the identity suite (corpus or a given germ)");
    src.attach(ver);
    ver->add_option("--random", random_count,
                    "number of random germs to add to the corpus");
    ver->add_option("--seed", seed, "random seed (default 1)");
    ver->add_flag("--json", json_out, "machine-readable output");

    CLI::App* mesh = app.add_subcommand("mesh", "export an OBJ mesh");
    src.attach(mesh);
    mesh->add_option("--out", out_path, "output OBJ path")->required();
    mesh->add_option("--grid", grid, "vertex grid <nu>x<nv> (default 40x40)");
    mesh->add_option("--range", range,
                     "umin:umax:vmin:vmax (default -1:1:-1:1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (inv->parsed()) return run_invariants(src, at, json_out);
        if (nf->parsed()) return run_normal_form(src, json_out);
        if (ver->parsed())
            return run_verify(src, random_count, seed, json_out);
        if (mesh->parsed()) return run_mesh(src, out_path, grid, range);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
