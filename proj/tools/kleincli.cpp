#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "klein/io.hpp"

namespace {

struct CommonOpts {
    int n = 3;
    double radius = 1.0;
    double strip_height = 2.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--n", o.n, "polygon sides / strips");
    cmd->add_option("--radius", o.radius, "cylinder radius");
    cmd->add_option("--strip-height", o.strip_height, "strip height (polygon edge)");
}

int run_build(const CommonOpts& o, int res_u, int res_v, bool slits,
              const std::string& out) {
    klein::atlas::AtlasMap atlas =
        klein::atlas::chain_motions({o.n, o.radius, o.strip_height});
    klein::mesh::SurfaceMesh m = klein::mesh::tessellate(atlas, res_u, res_v);
    if (slits) {
        std::vector<klein::analysis::IntersectionCurve> curves;
        for (int k = 0; k < o.n; ++k) {
            curves.push_back(klein::analysis::intersection_closed_form(atlas, k));
        }
        m = klein::mesh::cut_slits(atlas, m, curves);
    }
    klein::io::write_mesh(m, atlas.domain(), out);
    std::printf("wrote %s: %zu vertices, %zu triangles\n", out.c_str(),
                m.vertices.size(), m.triangles.size());
    return 0;
}

int run_verify(const CommonOpts& o, std::uint64_t seed,
               const klein::analysis::Tolerances& tol, const std::string& report_path) {
    klein::analysis::VerificationReport report =
        klein::analysis::verify_all({o.n, o.radius, o.strip_height}, tol, seed);
    if (!report_path.empty()) klein::io::write_report(report, report_path);
    for (const auto& c : report.checks) {
        std::printf("%-28s %s  max %.3e  tol %.1e  (%ld samples)%s%s\n", c.name.c_str(),
                    c.pass ? "pass" : "FAIL", c.max_residual, c.tolerance, c.samples,
                    c.notes.empty() ? "" : "  ", c.notes.c_str());
    }
    std::printf("overall: %s\n", report.overall_pass ? "pass" : "FAIL");
    return report.overall_pass ? 0 : 1;
}

int run_pattern(const CommonOpts& o, double scale, int grid, const std::string& out) {
    klein::atlas::AtlasMap atlas =
        klein::atlas::chain_motions({o.n, o.radius, o.strip_height});
    klein::io::PatternStyle style;
    style.scale = scale;
    style.grid_cells_u = grid;
    style.grid_cells_v = grid;
    klein::io::write_pattern(atlas.domain(), klein::io::crease_arcs(atlas.domain()),
                             klein::io::cut_arcs(atlas, klein::mesh::SlitPolicy::alternate),
                             style, out);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int run_intersect(const CommonOpts& o, int pair, bool with_oracle,
                  const std::string& out) {
    klein::atlas::AtlasMap atlas =
        klein::atlas::chain_motions({o.n, o.radius, o.strip_height});
    const auto curve = klein::analysis::intersection_closed_form(atlas, pair);

    nlohmann::ordered_json j;
    j["pair"] = pair;
    j["carrier_normal"] = {curve.carrier_normal.x, curve.carrier_normal.y,
                           curve.carrier_normal.z};
    j["carrier_point"] = {curve.carrier_point.x, curve.carrier_point.y,
                          curve.carrier_point.z};
    j["curve"] = nlohmann::ordered_json::array();
    for (const auto& p : curve.sample(128)) j["curve"].push_back({p.x, p.y, p.z});
    if (with_oracle) {
        const auto oracle = klein::analysis::intersection_oracle(atlas, pair, 128);
        auto [fold_pts, pass_pts] =
            klein::analysis::split_oracle_clusters(atlas, pair, oracle);
        std::vector<klein::geom::Point3> full;
        for (int i = 0; i <= 8192; ++i) {
            full.push_back(curve.image_at(-M_PI * o.radius +
                                          2.0 * M_PI * o.radius * i / 8192.0));
        }
        j["oracle"] = nlohmann::ordered_json::array();
        for (const auto& p : oracle) j["oracle"].push_back({p.x, p.y, p.z});
        j["oracle_pass_through_hausdorff"] =
            klein::analysis::hausdorff_to_polyline(pass_pts, full);
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw klein::IoError("cannot open for writing: " + out);
    f << j.dump(2) << "\n";
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flat Klein bottle / torus figure builder and verifier"};
    app.require_subcommand(1);

    CommonOpts build_o, verify_o, pattern_o, intersect_o;

    auto* build = app.add_subcommand("build", "tessellate and export the mesh");
    add_common(build, build_o);
    int res_u = 128, res_v = 32;
    bool slits = false;
    std::string build_out = "figure.obj";
    build->add_option("--res-u", res_u, "columns across the domain");
    build->add_option("--res-v", res_v, "rows per strip");
    build->add_flag("--slits", slits, "cut pass-through slits");
    build->add_option("--out", build_out, "output mesh path");

    auto* verify = app.add_subcommand("verify", "run every property check");
    add_common(verify, verify_o);
    std::uint64_t seed = 0;
    klein::analysis::Tolerances tol;
    std::string report_path;
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_option("--tol-analytic", tol.analytic, "analytic identity tolerance");
    verify->add_option("--tol-chain", tol.chain, "chained-motion tolerance");
    verify->add_option("--tol-fd", tol.fd, "finite-difference tolerance");
    verify->add_option("--report", report_path, "JSON report path");

    auto* pattern = app.add_subcommand("pattern", "export the crease pattern SVG");
    add_common(pattern, pattern_o);
    double scale = 30.0;
    int grid = 24;
    std::string pattern_out = "pattern.svg";
    pattern->add_option("--scale", scale, "document units per length unit");
    pattern->add_option("--grid", grid, "grid cells per side");
    pattern->add_option("--out", pattern_out, "output SVG path");

    auto* intersect = app.add_subcommand("intersect", "adjacent-pair intersection curve");
    add_common(intersect, intersect_o);
    int pair = 0;
    bool with_oracle = false;
    std::string intersect_out = "intersection.json";
    intersect->add_option("--pair", pair, "joint index k (tubes k and k+1)");
    intersect->add_flag("--oracle", with_oracle, "include brute-force oracle points");
    intersect->add_option("--out", intersect_out, "output JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed()) return run_build(build_o, res_u, res_v, slits, build_out);
        if (verify->parsed()) return run_verify(verify_o, seed, tol, report_path);
        if (pattern->parsed()) return run_pattern(pattern_o, scale, grid, pattern_out);
        return run_intersect(intersect_o, pair, with_oracle, intersect_out);
    } catch (const klein::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
