#pragma once

#include <utility>
#include <vector>

#include "klein/elbow.hpp"
#include "klein/geometry.hpp"

namespace klein::atlas {

using geom::Point3;
using geom::RigidMotion;
using geom::Vec3;

struct FigureConfig {
    int n;       // polygon sides / strips
    double r;    // cylinder radius
    double s;    // strip height = polygon edge length

    FigureConfig(int n_, double r_, double s_);

    double tau() const { return 1.0 / std::tan(M_PI / n); }
};

enum class Orientability { orientable, non_orientable };

// Klein bottle for odd n, torus for even n.
Orientability orientability(const FigureConfig& config);

// The rectangle [-pi r, pi r] x [-s/2, n s - s/2] with its strip partition,
// mirrored crease curves and edge identifications.
struct FlatDomain {
    FigureConfig config;
    double u_min, u_max;  // -pi r, pi r
    double v_min, v_max;  // -s/2, n s - s/2

    double strip_center(int k) const { return k * config.s; }
    int strip_sign(int k) const { return (k % 2 == 0) ? 1 : -1; }

    // Strip index for a v inside the rectangle (boundary rows go downward).
    int strip_index(double v) const;

    // v = v_k + sigma_k * tau * r * sin(u/r)
    double crease_v(int k, double u) const;

    bool contains(double u, double v) const;

    // Horizontal deck transformation, one application up (+1) or down (-1):
    // torus (u, v + dir*n*s), Klein (-u, v + dir*n*s).
    std::pair<double, double> deck(double u, double v, int dir) const;

    // Wrap u periodically and apply the horizontal deck map until v is inside.
    std::pair<double, double> canonical(double u, double v) const;

    // Distance in the quotient metric (direct, u-periodic, and one horizontal
    // deck application each way).
    double quotient_distance(double u1, double v1, double u2, double v2) const;
};

FlatDomain build_domain(const FigureConfig& config);

class AtlasMap {
  public:
    AtlasMap(const FigureConfig& config, FlatDomain domain,
             std::vector<RigidMotion> strip_motions, double closure_residual);

    const FigureConfig& config() const { return config_; }
    const FlatDomain& domain() const { return domain_; }
    const crease::ElbowSpec& elbow_spec() const { return elbow_.spec; }
    const crease::ElbowMap& elbow_map() const { return elbow_; }

    // G_k; index n holds the full loop (identity up to roundoff).
    const RigidMotion& strip_motion(int k) const { return motions_[k]; }
    double closure_residual() const { return closure_residual_; }

    // The map itself. Throws std::domain_error outside the rectangle.
    Point3 phi(double u, double v) const;

    // Analytic one-sided Jacobian columns (d/du, d/dv); points exactly on a
    // crease take the f1 branch.
    std::pair<Vec3, Vec3> jacobian(double u, double v) const;

    struct AxisLine {
        Point3 anchor;
        Vec3 direction;  // unit
    };
    // The n polygon-edge axis lines (axis of cylinder j = G_j(y-axis)).
    const std::vector<AxisLine>& axis_lines() const { return axes_; }
    // Polygon vertices V_k = G_k(origin).
    const std::vector<Point3>& polygon_vertices() const { return vertices_; }

    // Index of the axis line whose tube surface the point lies on
    // (argmin |dist(p, axis_j) - r|).
    int nearest_axis(const Point3& p) const;
    double distance_to_axis(const Point3& p, int j) const;

    // Cylinder index carrying the given domain point: strip k below its
    // crease lies on cylinder k, above on cylinder k+1 (mod n).
    int cylinder_index(double u, double v) const;

  private:
    FigureConfig config_;
    FlatDomain domain_;
    crease::ElbowMap elbow_;
    std::vector<RigidMotion> motions_;       // G_0..G_n
    std::vector<RigidMotion> fold_motions_;  // G_k o rho
    std::vector<AxisLine> axes_;
    std::vector<Point3> vertices_;
    double closure_residual_;
};

// Builds G_k inductively via H = rho o T_s o M_x so consecutive strips share
// their edge circle pointwise; throws ConstructionError if the figure fails
// to close within 1e-6.
AtlasMap chain_motions(const FigureConfig& config);

struct InflectionPoint {
    int strip;
    double u, v;   // domain coordinates
    Point3 image;
};

struct CreaseCurve {
    int strip;
    double center_v;
    int sign;  // sigma_k
};

// The loci where properties I (smoothness) and II (local isometry) fail.
// The property-III intersection curves are produced by the analysis layer.
struct ExceptionalSets {
    std::vector<CreaseCurve> creases;          // smoothness fails (n curves)
    std::vector<InflectionPoint> inflections;  // local isometry fails (2n points)
};

ExceptionalSets exceptional_sets(const AtlasMap& atlas);

}  // namespace klein::atlas
