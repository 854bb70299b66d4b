#pragma once

#include "klein/geometry.hpp"

namespace klein::crease {

using geom::PlanarCurve;
using geom::PlaneThroughOrigin;
using geom::Point3;
using geom::Vec3;

// One strip of the construction: a cylinder of radius r around the y-axis,
// the miter plane y = tau*x, and a strip of axial height s.
struct ElbowSpec {
    double r;    // cylinder radius
    double tau;  // slope of the miter plane
    double s;    // strip height (v spans [-s/2, s/2])

    ElbowSpec(double r_, double tau_, double s_);

    // tau for the regular n-gon figure: cot(pi/n).
    static ElbowSpec for_ngon(int n, double r, double s);

    double crease_amplitude() const { return tau * r; }
    double u_min() const { return -M_PI * r; }
    double u_max() const { return M_PI * r; }
};

struct ElbowMap {
    ElbowSpec spec;
    PlaneThroughOrigin plane;  // the miter plane
    PlanarCurve crease;        // v = tau*r*sin(u/r) on [-pi r, pi r]

    explicit ElbowMap(const ElbowSpec& s);
};

// The folded image of the crease: an ellipse in the miter plane, centered at
// the origin, semi-major r*sqrt(1+tau^2) along (1,tau,0), semi-minor r along z.
struct ImageCrease {
    Vec3 major_dir;
    Vec3 minor_dir;
    double semi_major;
    double semi_minor;

    explicit ImageCrease(const ElbowSpec& s);

    // Point at crease parameter u: f1(u, tau*r*sin(u/r)).
    Point3 at(double u, double r) const {
        return major_dir * (semi_major * std::sin(u / r)) +
               minor_dir * (semi_minor * std::cos(u / r));
    }
};

// Cylinder map (r sin(u/r), v, r cos(u/r)). Total; callers enforce the strip.
Point3 f1(const ElbowSpec& spec, double u, double v);

// Partial derivatives of f1 (orthonormal columns).
Vec3 f1_du(const ElbowSpec& spec, double u);
Vec3 f1_dv(const ElbowSpec& spec);

PlanarCurve crease_of(const ElbowSpec& spec);

// Reflected cylinder map: reflect(Pi, f1).
Point3 f2(const ElbowMap& map, double u, double v);

// Piecewise map of the strip: f1 below the crease, f2 above. Throws
// std::domain_error off the strip.
Point3 elbow(const ElbowMap& map, double u, double v);

// true where v is on the f1 (below-crease) side, with the crease itself
// belonging to both branches.
bool below_crease(const ElbowSpec& spec, double u, double v);

struct CurvaturePair {
    double kappa_image;   // curvature of the crease ellipse at parameter u
    double kappa_domain;  // curvature of the planar sine crease at u
};

// Both curvatures share the denominator (1 + tau^2 cos^2(u/r))^{3/2}; the
// image numerator sqrt(1+tau^2)/r always dominates tau|sin(u/r)|/r.
CurvaturePair curvature_condition(const ElbowSpec& spec, double u);

// Angle between the one-sided tangent planes of f1 and f2 along the crease:
// pi - arccos(1 - 2 tau^2 sin^2(u/r) / (1 + tau^2)). Equals pi exactly at the
// inflection parameters {-pi r, 0, pi r}.
double fold_dihedral(const ElbowSpec& spec, double u);

}  // namespace klein::crease
