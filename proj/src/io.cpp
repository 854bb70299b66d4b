#include "klein/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace klein::io {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // binary: LF newlines everywhere
    if (!f) throw IoError("cannot open for writing: " + path);
    return f;
}

void finish(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace

void write_mesh(const mesh::SurfaceMesh& mesh, const atlas::FlatDomain& domain,
                const std::string& path) {
    std::ofstream f = open_out(path);
    f << "# flat figure mesh: " << mesh.vertices.size() << " vertices, "
      << mesh.triangles.size() << " triangles\n";
    for (const auto& p : mesh.vertices) {
        f << "v " << num(p.x) << " " << num(p.y) << " " << num(p.z) << "\n";
    }
    const double du = domain.u_max - domain.u_min;
    const double dv = domain.v_max - domain.v_min;
    for (const auto& uv : mesh.uvs) {
        f << "vt " << num((uv[0] - domain.u_min) / du) << " "
          << num((uv[1] - domain.v_min) / dv) << "\n";
    }
    for (const auto& t : mesh.triangles) {
        f << "f " << t[0] + 1 << "/" << t[0] + 1 << " " << t[1] + 1 << "/" << t[1] + 1
          << " " << t[2] + 1 << "/" << t[2] + 1 << "\n";
    }
    finish(f, path);
}

void PatternStyle::validate() const {
    if (scale <= 0.0) throw ConfigError("pattern style: scale must be positive");
    if (grid_cells_u < 1 || grid_cells_v < 1) {
        throw ConfigError("pattern style: grid cells must be >= 1");
    }
}

std::vector<analysis::SineArc> crease_arcs(const atlas::FlatDomain& domain) {
    std::vector<analysis::SineArc> arcs;
    for (int k = 0; k < domain.config.n; ++k) {
        arcs.push_back({domain.strip_center(k),
                        domain.strip_sign(k) * domain.config.tau() * domain.config.r,
                        domain.u_min, domain.u_max});
    }
    return arcs;
}

std::vector<analysis::SineArc> cut_arcs(const atlas::AtlasMap& atlas,
                                        mesh::SlitPolicy policy) {
    std::vector<analysis::SineArc> arcs;
    for (int k = 0; k < atlas.config().n; ++k) {
        const auto curve = analysis::intersection_closed_form(atlas, k);
        const auto arc = curve.domain_preimage(mesh::slit_side(policy, k));
        for (const auto& piece : analysis::clip_arc_to_domain(atlas.domain(), arc)) {
            arcs.push_back(piece);
        }
    }
    return arcs;
}

void write_pattern(const atlas::FlatDomain& domain,
                   const std::vector<analysis::SineArc>& creases,
                   const std::vector<analysis::SineArc>& cuts, const PatternStyle& style,
                   const std::string& path) {
    style.validate();
    const double W = (domain.u_max - domain.u_min) * style.scale;
    const double H = (domain.v_max - domain.v_min) * style.scale;
    auto X = [&](double u) { return (u - domain.u_min) * style.scale; };
    auto Y = [&](double v) { return (domain.v_max - v) * style.scale; };

    std::ofstream f = open_out(path);
    f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\""
      << num(H) << "\" viewBox=\"0 0 " << num(W) << " " << num(H) << "\">\n";

    // two-color grid; arrow glyphs make the texture chiral so the Klein
    // identification's mirror is visible
    const double cw = W / style.grid_cells_u;
    const double ch = H / style.grid_cells_v;
    for (int j = 0; j < style.grid_cells_v; ++j) {
        for (int i = 0; i < style.grid_cells_u; ++i) {
            const std::string& color =
                ((i + j) % 2 == 0) ? style.color_a : style.color_b;
            f << "<rect x=\"" << num(i * cw) << "\" y=\"" << num(j * ch) << "\" width=\""
              << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"" << color
              << "\"/>\n";
            if (style.orientation_glyphs) {
                const double cx = (i + 0.5) * cw, cy = (j + 0.5) * ch;
                const double a = 0.3 * std::min(cw, ch);
                // arrow along +u with a tick toward +v at the tail
                f << "<path d=\"M " << num(cx - a) << " " << num(cy) << " L "
                  << num(cx + a) << " " << num(cy) << " L " << num(cx + 0.5 * a) << " "
                  << num(cy + 0.4 * a) << " M " << num(cx - a) << " " << num(cy) << " L "
                  << num(cx - a) << " " << num(cy - 0.7 * a)
                  << "\" fill=\"none\" stroke=\"#666666\" stroke-width=\""
                  << num(0.06 * a) << "\"/>\n";
            }
        }
    }

    f << "<rect x=\"0\" y=\"0\" width=\"" << num(W) << "\" height=\"" << num(H)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    auto polyline = [&](const analysis::SineArc& arc, const char* cls,
                        const char* extra) {
        const int samples = 256;
        f << "<polyline class=\"" << cls << "\" data-amplitude=\""
          << num(std::abs(arc.amplitude) * style.scale) << "\" points=\"";
        for (int i = 0; i <= samples; ++i) {
            const double u = arc.u0 + (arc.u1 - arc.u0) * i / samples;
            if (i) f << " ";
            f << num(X(u)) << "," << num(Y(arc.eval(u, domain.config.r)));
        }
        f << "\" fill=\"none\" " << extra << "/>\n";
    };
    for (const auto& arc : creases) {
        polyline(arc, "crease",
                 "stroke=\"#1040a0\" stroke-width=\"1.2\" "
                 "stroke-dasharray=\"8 3 2 3\"");
    }
    for (const auto& arc : cuts) {
        polyline(arc, "cut", "stroke=\"#c02020\" stroke-width=\"1.2\"");
    }
    f << "</svg>\n";
    finish(f, path);
}

nlohmann::ordered_json report_to_json(const analysis::VerificationReport& report) {
    nlohmann::ordered_json j;
    j["config"] = {{"n", report.n}, {"r", report.r}, {"s", report.s},
                   {"seed", report.seed}};
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"samples", c.samples},
                               {"max_residual", c.max_residual},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass},
                               {"notes", c.notes}});
    }
    j["exceptional_points"] = nlohmann::ordered_json::array();
    for (const auto& p : report.exceptional_points) {
        j["exceptional_points"].push_back(
            {{"domain_uv", {p.u, p.v}},
             {"image_xyz", {p.image.x, p.image.y, p.image.z}},
             {"dihedral", p.dihedral},
             {"cone_angle_at", {{"1e-2", p.cone_angle_1e2}, {"1e-3", p.cone_angle_1e3}}}});
    }
    j["overall_pass"] = report.overall_pass;
    return j;
}

void write_report(const analysis::VerificationReport& report, const std::string& path) {
    std::ofstream f = open_out(path);
    f << report_to_json(report).dump(2) << "\n";
    finish(f, path);
}

}  // namespace klein::io
