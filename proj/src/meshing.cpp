#include "klein/meshing.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace klein::mesh {

namespace {

std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

geom::Vec3 tri_normal(const Point3& a, const Point3& b, const Point3& c) {
    return (b - a).cross(c - a);
}

// How close two triangles across a diagonal are to coplanar (1 = flat).
double planarity(const Point3& a, const Point3& b, const Point3& c, const Point3& d,
                 const Point3& e, const Point3& f) {
    const geom::Vec3 n1 = tri_normal(a, b, c);
    const geom::Vec3 n2 = tri_normal(d, e, f);
    const double denom = n1.norm() * n2.norm();
    return denom > 0.0 ? n1.dot(n2) / denom : -1.0;
}

}  // namespace

EdgeFlag SurfaceMesh::flag_of(int a, int b) const {
    auto it = edge_flags.find(edge_key(a, b));
    return it == edge_flags.end() ? EdgeFlag::interior : it->second;
}

void SurfaceMesh::set_flag(int a, int b, EdgeFlag f) {
    edge_flags[edge_key(a, b)] = f;
}

SurfaceMesh tessellate(const AtlasMap& atlas, int res_u, int res_v_per_strip) {
    if (res_u < 16 || res_v_per_strip < 8) {
        throw ConfigError("tessellate: resolution below minimum 16 x 8");
    }
    const FlatDomain& dom = atlas.domain();
    const int n = dom.config.n;
    const double s = dom.config.s;
    const int rows = n * res_v_per_strip;
    const int jc = res_v_per_strip / 2;  // crease-aligned row within each strip

    SurfaceMesh m;
    m.vertices.resize(static_cast<size_t>(rows + 1) * (res_u + 1));
    m.uvs.resize(m.vertices.size());
    auto vid = [&](int i, int j) { return j * (res_u + 1) + i; };

    for (int i = 0; i <= res_u; ++i) {
        const double u = dom.u_min + (dom.u_max - dom.u_min) * i / res_u;
        for (int k = 0; k < n; ++k) {
            const double lo = dom.strip_center(k) - s / 2.0;
            const double hi = dom.strip_center(k) + s / 2.0;
            const double vc = dom.crease_v(k, u);
            for (int t = 0; t <= res_v_per_strip; ++t) {
                // piecewise-linear warp pinning row jc to the crease
                const double v = (t == jc) ? vc
                                 : (t < jc)
                                     ? lo + (vc - lo) * t / jc
                                     : vc + (hi - vc) * (t - jc) / (res_v_per_strip - jc);
                const int id = vid(i, k * res_v_per_strip + t);
                m.uvs[id] = {u, v};
                m.vertices[id] = atlas.phi(u, v);
            }
        }
    }

    for (int j = 0; j < rows; ++j) {
        for (int i = 0; i < res_u; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j);
            const int c = vid(i + 1, j + 1), d = vid(i, j + 1);
            const auto &A = m.vertices[a], &B = m.vertices[b];
            const auto &C = m.vertices[c], &D = m.vertices[d];
            const double ac = planarity(A, B, C, A, C, D);
            const double bd = planarity(A, B, D, B, C, D);
            if (ac >= bd) {
                m.triangles.push_back({a, b, c});
                m.triangles.push_back({a, c, d});
            } else {
                m.triangles.push_back({a, b, d});
                m.triangles.push_back({b, c, d});
            }
        }
    }

    for (int i = 0; i < res_u; ++i) {
        for (int k = 0; k < n; ++k) {
            m.set_flag(vid(i, k * res_v_per_strip + jc), vid(i + 1, k * res_v_per_strip + jc),
                       EdgeFlag::crease);
        }
        m.set_flag(vid(i, 0), vid(i + 1, 0), EdgeFlag::boundary);
        m.set_flag(vid(i, rows), vid(i + 1, rows), EdgeFlag::boundary);
    }
    for (int j = 0; j < rows; ++j) {
        m.set_flag(vid(0, j), vid(0, j + 1), EdgeFlag::boundary);
        m.set_flag(vid(res_u, j), vid(res_u, j + 1), EdgeFlag::boundary);
    }
    return m;
}

MeshQuality distortion(const SurfaceMesh& mesh) {
    std::set<std::pair<int, int>> edges;
    for (const auto& t : mesh.triangles) {
        edges.insert(edge_key(t[0], t[1]));
        edges.insert(edge_key(t[1], t[2]));
        edges.insert(edge_key(t[2], t[0]));
    }
    MeshQuality q;
    for (auto [a, b] : edges) {
        const double du = mesh.uvs[a][0] - mesh.uvs[b][0];
        const double dv = mesh.uvs[a][1] - mesh.uvs[b][1];
        const double luv = std::hypot(du, dv);
        if (luv == 0.0) throw MeshError("distortion: zero-length uv edge");
        const double l3 = (mesh.vertices[a] - mesh.vertices[b]).norm();
        q.max_distortion = std::max(q.max_distortion, std::abs(l3 - luv) / luv);
    }
    return q;
}

MeshQuality refinement_study(const AtlasMap& atlas, int res_u, int res_v_per_strip,
                             int levels) {
    MeshQuality q;
    for (int l = 0; l < levels; ++l) {
        q.refinement_series.push_back(
            distortion(tessellate(atlas, res_u << l, res_v_per_strip << l))
                .max_distortion);
    }
    q.max_distortion = q.refinement_series.back();
    return q;
}

bool crease_aligned(const SurfaceMesh& mesh, const FlatDomain& domain) {
    for (const auto& t : mesh.triangles) {
        const double vc = (mesh.uvs[t[0]][1] + mesh.uvs[t[1]][1] + mesh.uvs[t[2]][1]) / 3.0;
        const int k = domain.strip_index(vc);
        bool pos = false, neg = false;
        for (int idx : t) {
            const double g = mesh.uvs[idx][1] - domain.crease_v(k, mesh.uvs[idx][0]);
            if (g > 0.0) pos = true;
            if (g < 0.0) neg = true;
        }
        if (pos && neg) return false;
    }
    return true;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

QuotientTopology quotient_topology(const SurfaceMesh& mesh, const FlatDomain& domain) {
    const double tol = 1e-9 * std::max(domain.config.r, domain.config.s);
    const int nv = static_cast<int>(mesh.vertices.size());
    UnionFind uf(nv);

    std::vector<int> left, right, bottom, top;
    for (int i = 0; i < nv; ++i) {
        if (std::abs(mesh.uvs[i][0] - domain.u_min) < tol) left.push_back(i);
        if (std::abs(mesh.uvs[i][0] - domain.u_max) < tol) right.push_back(i);
        if (std::abs(mesh.uvs[i][1] - domain.v_min) < tol) bottom.push_back(i);
        if (std::abs(mesh.uvs[i][1] - domain.v_max) < tol) top.push_back(i);
    }
    for (int a : left) {
        for (int b : right) {
            if (std::abs(mesh.uvs[a][1] - mesh.uvs[b][1]) < tol) uf.unite(a, b);
        }
    }
    for (int a : bottom) {
        auto [ut, vt] = domain.deck(mesh.uvs[a][0], domain.v_min, +1);
        (void)vt;
        for (int b : top) {
            if (std::abs(mesh.uvs[b][0] - ut) < tol) uf.unite(a, b);
        }
    }

    QuotientTopology out;
    std::set<int> classes;
    std::map<std::pair<int, int>, int> edge_use;
    for (const auto& t : mesh.triangles) {
        for (int idx : t) classes.insert(uf.find(idx));
        for (int e = 0; e < 3; ++e) {
            ++edge_use[edge_key(uf.find(t[e]), uf.find(t[(e + 1) % 3]))];
        }
    }
    out.vertices = static_cast<long>(classes.size());
    out.edges = static_cast<long>(edge_use.size());
    out.faces = static_cast<long>(mesh.triangles.size());
    out.euler = out.vertices - out.edges + out.faces;
    out.closed = std::all_of(edge_use.begin(), edge_use.end(),
                             [](const auto& e) { return e.second == 2; });

    // Orientability: propagate a consistent face orientation; two faces are
    // compatible when they traverse their shared quotient edge oppositely.
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> incident;
    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
        for (int e = 0; e < 3; ++e) {
            const int ra = uf.find(mesh.triangles[t][e]);
            const int rb = uf.find(mesh.triangles[t][(e + 1) % 3]);
            incident[edge_key(ra, rb)].push_back({t, ra < rb ? +1 : -1});
        }
    }
    std::vector<int> orient(mesh.triangles.size(), 0);
    out.orientable = true;
    std::vector<int> stack;
    for (int seed = 0; seed < static_cast<int>(mesh.triangles.size()); ++seed) {
        if (orient[seed] != 0) continue;
        orient[seed] = 1;
        stack.push_back(seed);
        while (!stack.empty()) {
            const int t = stack.back();
            stack.pop_back();
            for (int e = 0; e < 3; ++e) {
                const int ra = uf.find(mesh.triangles[t][e]);
                const int rb = uf.find(mesh.triangles[t][(e + 1) % 3]);
                const int dir = (ra < rb ? +1 : -1) * orient[t];
                for (auto [t2, d2] : incident[edge_key(ra, rb)]) {
                    if (t2 == t) continue;
                    const int needed = (d2 * -dir > 0) ? 1 : -1;
                    if (orient[t2] == 0) {
                        orient[t2] = needed;
                        stack.push_back(t2);
                    } else if (orient[t2] != needed) {
                        out.orientable = false;
                    }
                }
            }
        }
    }
    return out;
}

namespace {

using analysis::SineArc;

// Split the mesh along one in-domain arc piece: insert vertices where the arc
// crosses mesh edges, retriangulate the crossed triangles, then duplicate the
// inserted vertices so the two sides separate. Endpoints that are existing
// grid vertices (the inflection pre-images) stay shared.
void cut_one_piece(SurfaceMesh& m, const AtlasMap& atlas, const SineArc& piece) {
    const double r = atlas.config().r;
    const int n_before = static_cast<int>(m.vertices.size());
    auto curve_v = [&](double u) { return piece.eval(u, r); };

    std::vector<double> f(m.vertices.size());
    for (size_t i = 0; i < m.vertices.size(); ++i) {
        f[i] = m.uvs[i][1] - curve_v(m.uvs[i][0]);
        if (std::abs(f[i]) < 1e-12) f[i] = 0.0;
    }

    // one crossing vertex per crossed edge
    struct Crossing {
        int vertex;
        double u;
    };
    std::map<std::pair<int, int>, Crossing> crossings;
    std::set<std::pair<int, int>> edges;
    for (const auto& t : m.triangles) {
        edges.insert(edge_key(t[0], t[1]));
        edges.insert(edge_key(t[1], t[2]));
        edges.insert(edge_key(t[2], t[0]));
    }
    const double u_lo = std::min(piece.u0, piece.u1) - 1e-9;
    const double u_hi = std::max(piece.u0, piece.u1) + 1e-9;
    for (auto [a, b] : edges) {
        if (f[a] == 0.0 || f[b] == 0.0 || (f[a] < 0.0) == (f[b] < 0.0)) continue;
        double ta = 0.0, tb = 1.0;
        auto at = [&](double t) {
            const double u = m.uvs[a][0] + (m.uvs[b][0] - m.uvs[a][0]) * t;
            const double v = m.uvs[a][1] + (m.uvs[b][1] - m.uvs[a][1]) * t;
            return v - curve_v(u);
        };
        for (int it = 0; it < 60; ++it) {
            const double tm = 0.5 * (ta + tb);
            if ((at(tm) < 0.0) == (f[a] < 0.0)) ta = tm; else tb = tm;
        }
        const double t = 0.5 * (ta + tb);
        const double u = m.uvs[a][0] + (m.uvs[b][0] - m.uvs[a][0]) * t;
        if (u < u_lo || u > u_hi) continue;
        const double v = curve_v(u);
        const int idx = static_cast<int>(m.vertices.size());
        m.vertices.push_back(atlas.phi(u, v));
        m.uvs.push_back({u, v});
        f.push_back(0.0);
        crossings[edge_key(a, b)] = {idx, u};
    }
    if (crossings.empty()) {
        throw ConfigError("cut_slits: arc does not cross any mesh material");
    }

    // retriangulate crossed triangles, preserving orientation
    std::vector<std::array<int, 3>> tris;
    tris.reserve(m.triangles.size() + 2 * crossings.size());
    for (const auto& t : m.triangles) {
        int crossed[3], count = 0;
        for (int e = 0; e < 3; ++e) {
            crossed[e] = -1;
            auto it = crossings.find(edge_key(t[e], t[(e + 1) % 3]));
            if (it != crossings.end()) {
                crossed[e] = it->second.vertex;
                ++count;
            }
        }
        if (count == 2) {
            // rotate so the apex (vertex shared by both crossed edges) is first
            int e0 = (crossed[0] < 0) ? 1 : (crossed[1] < 0 ? 2 : 0);
            // crossed edges are (e0-1 -> e0) ... find apex = common vertex of
            // the two crossed edges: the vertex not on the uncrossed edge
            int un = (crossed[0] < 0) ? 0 : (crossed[1] < 0 ? 1 : 2);
            (void)e0;
            const int s = t[(un + 2) % 3];  // opposite the uncrossed edge
            const int p = t[un], q = t[(un + 1) % 3];
            const int x1 = crossings.at(edge_key(s, p)).vertex;
            const int x2 = crossings.at(edge_key(q, s)).vertex;
            tris.push_back({s, x1, x2});
            tris.push_back({x1, p, q});
            tris.push_back({x1, q, x2});
        } else if (count == 1) {
            // the curve runs from a vertex lying on it through the opposite edge
            int e = crossed[0] >= 0 ? 0 : (crossed[1] >= 0 ? 1 : 2);
            const int z = t[(e + 2) % 3];
            if (f[z] != 0.0) {  // grazing contact at the range boundary; keep
                tris.push_back(t);
                continue;
            }
            const int p = t[e], q = t[(e + 1) % 3];
            const int x = crossed[e];
            tris.push_back({z, p, x});
            tris.push_back({z, x, q});
        } else {
            tris.push_back(t);
        }
    }

    // transfer flags across split edges
    for (const auto& [key, c] : crossings) {
        auto it = m.edge_flags.find(key);
        if (it == m.edge_flags.end()) continue;
        const EdgeFlag flag = it->second;
        m.edge_flags.erase(it);
        m.edge_flags[edge_key(key.first, c.vertex)] = flag;
        m.edge_flags[edge_key(key.second, c.vertex)] = flag;
    }

    // duplicate every crossing vertex for the f > 0 side
    std::unordered_map<int, int> dup;
    for (const auto& [key, c] : crossings) {
        const int idx = static_cast<int>(m.vertices.size());
        m.vertices.push_back(m.vertices[c.vertex]);
        m.uvs.push_back(m.uvs[c.vertex]);
        f.push_back(0.0);
        dup[c.vertex] = idx;
    }
    for (auto& t : tris) {
        bool touches = false;
        for (int idx : t) touches |= dup.count(idx) > 0;
        if (!touches) continue;
        const double uc = (m.uvs[t[0]][0] + m.uvs[t[1]][0] + m.uvs[t[2]][0]) / 3.0;
        const double vc = (m.uvs[t[0]][1] + m.uvs[t[1]][1] + m.uvs[t[2]][1]) / 3.0;
        if (vc - curve_v(uc) <= 0.0) continue;
        for (int& idx : t) {
            auto it = dup.find(idx);
            if (it != dup.end()) idx = it->second;
        }
    }
    m.triangles = std::move(tris);

    std::set<std::pair<int, int>> edge_set;
    for (const auto& t : m.triangles) {
        edge_set.insert(edge_key(t[0], t[1]));
        edge_set.insert(edge_key(t[1], t[2]));
        edge_set.insert(edge_key(t[2], t[0]));
    }

    // flags whose endpoints were duplicated apply to the surviving variants
    std::vector<std::pair<std::pair<int, int>, EdgeFlag>> extra;
    for (const auto& [key, flag] : m.edge_flags) {
        auto [a, b] = key;
        for (int a2 : {a, dup.count(a) ? dup[a] : a}) {
            for (int b2 : {b, dup.count(b) ? dup[b] : b}) {
                const auto k2 = edge_key(a2, b2);
                if (k2 != key && edge_set.count(k2)) extra.push_back({k2, flag});
            }
        }
    }
    for (const auto& [key, flag] : extra) m.edge_flags[key] = flag;

    // flag the chain edges (both lips) as cuts
    std::vector<Crossing> chain;
    for (const auto& [key, c] : crossings) chain.push_back(c);
    std::sort(chain.begin(), chain.end(),
              [](const Crossing& a, const Crossing& b) { return a.u < b.u; });
    // shared pre-existing vertices at the arc endpoints join the chain
    auto endpoint_vertex = [&](double ue) {
        const double ve = curve_v(ue);
        for (int idx = 0; idx < n_before; ++idx) {
            if (std::abs(m.uvs[idx][0] - ue) < 1e-9 && std::abs(m.uvs[idx][1] - ve) < 1e-9) {
                return idx;
            }
        }
        return -1;
    };
    std::vector<int> path;
    const int head = endpoint_vertex(std::min(piece.u0, piece.u1));
    const int tail = endpoint_vertex(std::max(piece.u0, piece.u1));
    if (head >= 0) path.push_back(head);
    for (const auto& c : chain) path.push_back(c.vertex);
    if (tail >= 0) path.push_back(tail);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        for (int a : {path[i], dup.count(path[i]) ? dup[path[i]] : path[i]}) {
            for (int b : {path[i + 1], dup.count(path[i + 1]) ? dup[path[i + 1]]
                                                              : path[i + 1]}) {
                if (edge_set.count(edge_key(a, b))) m.set_flag(a, b, EdgeFlag::cut);
            }
        }
    }
}

}  // namespace

analysis::TubeSide slit_side(SlitPolicy policy, int joint) {
    switch (policy) {
        case SlitPolicy::cut_incoming: return analysis::TubeSide::incoming;
        case SlitPolicy::cut_outgoing: return analysis::TubeSide::outgoing;
        default:
            return (joint % 2 == 0) ? analysis::TubeSide::incoming
                                    : analysis::TubeSide::outgoing;
    }
}

SurfaceMesh cut_slits(const AtlasMap& atlas, const SurfaceMesh& mesh,
                      const std::vector<analysis::IntersectionCurve>& curves,
                      SlitPolicy policy) {
    SurfaceMesh out = mesh;
    const FlatDomain& dom = atlas.domain();
    for (const auto& curve : curves) {
        const int k = curve.pair_index;
        const analysis::TubeSide side = slit_side(policy, k);
        const SineArc arc = curve.domain_preimage(side);
        const auto pieces = analysis::clip_arc_to_domain(dom, arc);
        for (const auto& piece : pieces) cut_one_piece(out, atlas, piece);
        out.notes.push_back("slit joint " + std::to_string(k) + ": tube " +
                            std::to_string(side == analysis::TubeSide::incoming
                                               ? k
                                               : (k + 1) % dom.config.n) +
                            ", " + std::to_string(pieces.size()) + " piece(s)");
    }
    return out;
}

}  // namespace klein::mesh
