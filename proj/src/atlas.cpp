#include "klein/atlas.hpp"

#include <algorithm>
#include <cmath>

namespace klein::atlas {

FigureConfig::FigureConfig(int n_, double r_, double s_) : n(n_), r(r_), s(s_) {
    if (n < 3) throw ConfigError("degenerate polygon: need n >= 3");
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("cylinder radius must be positive");
    if (!std::isfinite(s)) throw ConfigError("strip height must be finite");
    if (!(s > 2.0 * r * tau())) {
        throw ConfigError("crease exceeds strip: need s > 2*r*cot(pi/n)");
    }
}

Orientability orientability(const FigureConfig& config) {
    return (config.n % 2 == 0) ? Orientability::orientable : Orientability::non_orientable;
}

int FlatDomain::strip_index(double v) const {
    const int k = static_cast<int>(std::floor((v + config.s / 2.0) / config.s));
    return std::clamp(k, 0, config.n - 1);
}

double FlatDomain::crease_v(int k, double u) const {
    return strip_center(k) +
           strip_sign(k) * config.tau() * config.r * std::sin(u / config.r);
}

bool FlatDomain::contains(double u, double v) const {
    const double pad = 1e-12 * config.r;
    return u >= u_min - pad && u <= u_max + pad && v >= v_min - pad && v <= v_max + pad;
}

std::pair<double, double> FlatDomain::deck(double u, double v, int dir) const {
    const double shift = dir * config.n * config.s;
    if (config.n % 2 == 0) return {u, v + shift};
    return {-u, v + shift};
}

std::pair<double, double> FlatDomain::canonical(double u, double v) const {
    const double period = u_max - u_min;
    u = std::remainder(u, period);
    int guard = 0;
    while (v < v_min && ++guard < 64) std::tie(u, v) = deck(u, v, +1);
    while (v > v_max && ++guard < 64) std::tie(u, v) = deck(u, v, -1);
    return {u, v};
}

double FlatDomain::quotient_distance(double u1, double v1, double u2, double v2) const {
    const double period = u_max - u_min;
    auto dist = [&](double ua, double va, double ub, double vb) {
        const double du = std::remainder(ua - ub, period);
        const double dv = va - vb;
        return std::hypot(du, dv);
    };
    double best = dist(u1, v1, u2, v2);
    for (int dir : {-1, +1}) {
        auto [ud, vd] = deck(u2, v2, dir);
        best = std::min(best, dist(u1, v1, ud, vd));
    }
    return best;
}

FlatDomain build_domain(const FigureConfig& config) {
    FlatDomain d{config,
                 -M_PI * config.r, M_PI * config.r,
                 -config.s / 2.0, config.n * config.s - config.s / 2.0};
    return d;
}

AtlasMap::AtlasMap(const FigureConfig& config, FlatDomain domain,
                   std::vector<RigidMotion> strip_motions, double closure_residual)
    : config_(config),
      domain_(std::move(domain)),
      elbow_(crease::ElbowSpec::for_ngon(config.n, config.r, config.s)),
      motions_(std::move(strip_motions)),
      closure_residual_(closure_residual) {
    const RigidMotion rho = RigidMotion::reflection(elbow_.plane);
    fold_motions_.reserve(motions_.size());
    for (const auto& g : motions_) fold_motions_.push_back(geom::compose(g, rho));

    axes_.reserve(config.n);
    vertices_.reserve(config.n);
    for (int k = 0; k < config.n; ++k) {
        axes_.push_back(AxisLine{motions_[k].apply(Point3{0, 0, 0}),
                                 motions_[k].apply_vector(Vec3{0, 1, 0}).normalized()});
        vertices_.push_back(motions_[k].apply(Point3{0, 0, 0}));
    }
}

Point3 AtlasMap::phi(double u, double v) const {
    if (!domain_.contains(u, v)) {
        throw std::domain_error("phi: (u,v) outside the domain rectangle");
    }
    const int k = domain_.strip_index(v);
    const double ul = domain_.strip_sign(k) * u;
    const double vl = v - domain_.strip_center(k);
    const Point3 p = crease::f1(elbow_.spec, ul, vl);
    if (crease::below_crease(elbow_.spec, ul, vl)) return motions_[k].apply(p);
    return fold_motions_[k].apply(p);
}

std::pair<Vec3, Vec3> AtlasMap::jacobian(double u, double v) const {
    if (!domain_.contains(u, v)) {
        throw std::domain_error("jacobian: (u,v) outside the domain rectangle");
    }
    const int k = domain_.strip_index(v);
    const int sigma = domain_.strip_sign(k);
    const double ul = sigma * u;
    const double vl = v - domain_.strip_center(k);
    const RigidMotion& g = crease::below_crease(elbow_.spec, ul, vl)
                               ? motions_[k]
                               : fold_motions_[k];
    const Vec3 du = g.apply_vector(crease::f1_du(elbow_.spec, ul)) * double(sigma);
    const Vec3 dv = g.apply_vector(crease::f1_dv(elbow_.spec));
    return {du, dv};
}

double AtlasMap::distance_to_axis(const Point3& p, int j) const {
    const AxisLine& a = axes_[j];
    const Vec3 w = p - a.anchor;
    return (w - a.direction * w.dot(a.direction)).norm();
}

int AtlasMap::nearest_axis(const Point3& p) const {
    int best = 0;
    double best_res = std::abs(distance_to_axis(p, 0) - config_.r);
    for (int j = 1; j < config_.n; ++j) {
        const double res = std::abs(distance_to_axis(p, j) - config_.r);
        if (res < best_res) {
            best_res = res;
            best = j;
        }
    }
    return best;
}

int AtlasMap::cylinder_index(double u, double v) const {
    const int k = domain_.strip_index(v);
    const double ul = domain_.strip_sign(k) * u;
    const double vl = v - domain_.strip_center(k);
    return crease::below_crease(elbow_.spec, ul, vl) ? k : (k + 1) % config_.n;
}

AtlasMap chain_motions(const FigureConfig& config) {
    FlatDomain domain = build_domain(config);
    const crease::ElbowMap elbow(crease::ElbowSpec::for_ngon(config.n, config.r, config.s));

    // H carries strip k+1's local frame onto strip k's: continuity across the
    // shared edge circle forces G_{k+1} = G_k o rho o T_s o M_x.
    const RigidMotion rho = RigidMotion::reflection(elbow.plane);
    const RigidMotion shift = RigidMotion::translate(Vec3{0.0, config.s, 0.0});
    const RigidMotion h = geom::compose(rho, geom::compose(shift, RigidMotion::mirror_x()));

    std::vector<RigidMotion> motions;
    motions.reserve(config.n + 1);
    motions.push_back(RigidMotion::identity());
    for (int k = 0; k < config.n; ++k) {
        motions.push_back(geom::compose(motions.back(), h));
    }

    // G_n must be the identity; measure the worst displacement of the bottom
    // edge circle under the full loop.
    const RigidMotion& loop = motions.back();
    double residual = 0.0;
    const int m = 1000;
    for (int i = 0; i <= m; ++i) {
        const double u = -M_PI * config.r + 2.0 * M_PI * config.r * i / m;
        const Point3 p = crease::f1(elbow.spec, u, -config.s / 2.0);
        residual = std::max(residual, (loop.apply(p) - p).norm());
    }
    if (residual > 1e-6) {
        throw ConstructionError("figure fails to close: loop residual " +
                                std::to_string(residual));
    }
    return AtlasMap(config, std::move(domain), std::move(motions), residual);
}

ExceptionalSets exceptional_sets(const AtlasMap& atlas) {
    const FigureConfig& cfg = atlas.config();
    const FlatDomain& dom = atlas.domain();
    ExceptionalSets out;
    for (int k = 0; k < cfg.n; ++k) {
        out.creases.push_back(CreaseCurve{k, dom.strip_center(k), dom.strip_sign(k)});
        // Inflections at local crease parameters 0 and pi r; +/- pi r are the
        // same point of the quotient.
        for (double ul : {0.0, M_PI * cfg.r}) {
            InflectionPoint ip;
            ip.strip = k;
            ip.u = dom.strip_sign(k) * ul;
            ip.v = dom.strip_center(k);
            ip.image = atlas.strip_motion(k).apply(
                crease::f1(atlas.elbow_spec(), ul, 0.0));
            out.inflections.push_back(ip);
        }
    }
    return out;
}

}  // namespace klein::atlas
