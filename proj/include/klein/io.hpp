#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "klein/meshing.hpp"

namespace klein::io {

// OBJ-style text mesh: positions, texture coordinates (domain rectangle
// normalized to the unit square), faces with 1-based v/vt pairs. 12
// significant digits, LF newlines, deterministic. Throws IoError.
void write_mesh(const mesh::SurfaceMesh& mesh, const atlas::FlatDomain& domain,
                const std::string& path);

struct PatternStyle {
    double scale = 30.0;  // document units per length unit
    int grid_cells_u = 24;
    int grid_cells_v = 24;
    std::string color_a = "#dce8f2";
    std::string color_b = "#f2e3d5";
    bool orientation_glyphs = true;

    void validate() const;  // throws ConfigError
};

// SVG crease pattern: checkerboard grid (optionally with chiral arrow glyphs),
// rectangle outline, dash-dot crease sinusoids (>= 256 points), solid cut
// arcs. Document size (2*pi*r x n*s) * scale. Throws IoError.
void write_pattern(const atlas::FlatDomain& domain,
                   const std::vector<analysis::SineArc>& creases,
                   const std::vector<analysis::SineArc>& cuts, const PatternStyle& style,
                   const std::string& path);

// The n crease sinusoids of the domain.
std::vector<analysis::SineArc> crease_arcs(const atlas::FlatDomain& domain);

// Slit pre-image arcs under the given policy, clipped to the domain.
std::vector<analysis::SineArc> cut_arcs(const atlas::AtlasMap& atlas,
                                        mesh::SlitPolicy policy);

nlohmann::ordered_json report_to_json(const analysis::VerificationReport& report);

// JSON: {"config": {...}, "checks": [...], "exceptional_points": [...],
// "overall_pass": bool}, fixed key order. Throws IoError.
void write_report(const analysis::VerificationReport& report, const std::string& path);

}  // namespace klein::io
