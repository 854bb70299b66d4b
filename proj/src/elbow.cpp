#include "klein/elbow.hpp"

#include <algorithm>
#include <cmath>

namespace klein::crease {

ElbowSpec::ElbowSpec(double r_, double tau_, double s_) : r(r_), tau(tau_), s(s_) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("cylinder radius must be positive");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("miter slope tau must be positive");
    if (!(s > 2.0 * tau * r)) throw ConfigError("crease exceeds strip: need s > 2*tau*r");
}

ElbowSpec ElbowSpec::for_ngon(int n, double r, double s) {
    if (n < 3) throw ConfigError("degenerate polygon: need n >= 3");
    const double tau = 1.0 / std::tan(M_PI / n);  // cot(pi/n)
    return ElbowSpec(r, tau, s);
}

ElbowMap::ElbowMap(const ElbowSpec& s)
    : spec(s),
      plane(PlaneThroughOrigin::slope_plane(s.tau)),
      crease(crease_of(s)) {}

ImageCrease::ImageCrease(const ElbowSpec& s) {
    const double h = std::sqrt(1.0 + s.tau * s.tau);
    major_dir = Vec3{1.0, s.tau, 0.0} / h;
    minor_dir = Vec3{0.0, 0.0, 1.0};
    semi_major = s.r * h;
    semi_minor = s.r;
}

Point3 f1(const ElbowSpec& spec, double u, double v) {
    return {spec.r * std::sin(u / spec.r), v, spec.r * std::cos(u / spec.r)};
}

Vec3 f1_du(const ElbowSpec& spec, double u) {
    return {std::cos(u / spec.r), 0.0, -std::sin(u / spec.r)};
}

Vec3 f1_dv(const ElbowSpec&) { return {0.0, 1.0, 0.0}; }

PlanarCurve crease_of(const ElbowSpec& spec) {
    return PlanarCurve{spec.crease_amplitude(), spec.r, spec.u_min(), spec.u_max()};
}

Point3 f2(const ElbowMap& map, double u, double v) {
    return geom::reflect(map.plane, f1(map.spec, u, v));
}

bool below_crease(const ElbowSpec& spec, double u, double v) {
    return v <= spec.crease_amplitude() * std::sin(u / spec.r);
}

Point3 elbow(const ElbowMap& map, double u, double v) {
    const ElbowSpec& s = map.spec;
    const double pad = 1e-12 * s.r;
    if (u < s.u_min() - pad || u > s.u_max() + pad ||
        v < -s.s / 2.0 - pad || v > s.s / 2.0 + pad) {
        throw std::domain_error("elbow: (u,v) outside the strip");
    }
    return below_crease(s, u, v) ? f1(s, u, v) : f2(map, u, v);
}

CurvaturePair curvature_condition(const ElbowSpec& spec, double u) {
    const double t = spec.tau;
    const double c = std::cos(u / spec.r);
    const double s = std::sin(u / spec.r);
    const double denom = std::pow(1.0 + t * t * c * c, 1.5);
    CurvaturePair out;
    out.kappa_image = std::sqrt(1.0 + t * t) / (spec.r * denom);
    out.kappa_domain = t * std::abs(s) / (spec.r * denom);
    return out;
}

double fold_dihedral(const ElbowSpec& spec, double u) {
    const double t = spec.tau;
    const double s = std::sin(u / spec.r);
    // N1 . rho(N1) for the outward cylinder normal N1 = (sin, 0, cos).
    const double d = 1.0 - 2.0 * t * t * s * s / (1.0 + t * t);
    return M_PI - std::acos(std::clamp(d, -1.0, 1.0));
}

}  // namespace klein::crease
