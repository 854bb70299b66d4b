#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "klein/analysis.hpp"

namespace klein::mesh {

using atlas::AtlasMap;
using atlas::FlatDomain;
using geom::Point3;

enum class EdgeFlag { interior, crease, cut, boundary };

// Indexed triangle mesh with flat-development coordinates. uvs are physical
// domain units, not normalized. Only non-interior edges carry entries in
// edge_flags (keyed by ordered index pair, lower first).
struct SurfaceMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<double, 2>> uvs;
    std::vector<std::array<int, 3>> triangles;
    std::map<std::pair<int, int>, EdgeFlag> edge_flags;
    std::vector<std::string> notes;

    EdgeFlag flag_of(int a, int b) const;
    void set_flag(int a, int b, EdgeFlag f);
};

// Structured grid over the domain: res_u columns, res_v_per_strip rows per
// strip, with one row per strip warped onto the crease curve column by column.
// Quads split along the diagonal whose two triangles are closer to coplanar.
// Throws ConfigError below the resolution minimum (16 x 8).
SurfaceMesh tessellate(const AtlasMap& atlas, int res_u, int res_v_per_strip);

struct MeshQuality {
    double max_distortion = 0.0;
    std::vector<double> refinement_series;  // filled by refinement_study
};

// max over edges of | |p_a - p_b| - |uv_a - uv_b| | / |uv_a - uv_b|.
// Throws MeshError on a zero-length uv edge.
MeshQuality distortion(const SurfaceMesh& mesh);

// Distortion at res, 2*res, ... doubling `levels` times; series front to back.
MeshQuality refinement_study(const AtlasMap& atlas, int res_u, int res_v_per_strip,
                             int levels);

// True if no triangle has uv vertices on both open sides of any crease curve.
bool crease_aligned(const SurfaceMesh& mesh, const FlatDomain& domain);

struct QuotientTopology {
    long vertices = 0, edges = 0, faces = 0;
    long euler = 0;
    bool closed = false;      // every edge shared by exactly two faces
    bool orientable = false;  // consistent face orientation exists
};

// Applies the boundary identifications to the uncut mesh (matching boundary
// vertices through the deck maps) and reports the quotient's topology.
QuotientTopology quotient_topology(const SurfaceMesh& mesh, const FlatDomain& domain);

enum class SlitPolicy { alternate, cut_incoming, cut_outgoing };

// Which tube side the policy slits at a given joint (alternate: the incoming
// tube k at even joints, the outgoing tube k+1 at odd ones).
analysis::TubeSide slit_side(SlitPolicy policy, int joint);

// Opens one slit per adjacent-pair intersection curve along its domain
// pre-image: splits crossed triangles along the arc, then duplicates the
// chain vertices so the two sides separate. Slit endpoints at inflection
// points stay shared; endpoints on the domain boundary are duplicated so the
// cut continues through the identification. Requires even res_u so the
// inflection pre-images are grid vertices.
SurfaceMesh cut_slits(const AtlasMap& atlas, const SurfaceMesh& mesh,
                      const std::vector<analysis::IntersectionCurve>& curves,
                      SlitPolicy policy = SlitPolicy::alternate);

}  // namespace klein::mesh
