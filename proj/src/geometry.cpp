#include "klein/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace klein::geom {

namespace {
std::atomic<std::int64_t> g_renorm_count{0};
constexpr double kRenormThreshold = 1e-10;
}  // namespace

PlaneThroughOrigin::PlaneThroughOrigin(const Vec3& normal) {
    const double n = normal.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw ConfigError("plane normal must be nonzero and finite");
    }
    unit_normal = normal / n;
}

PlaneThroughOrigin PlaneThroughOrigin::slope_plane(double tau) {
    // y = tau*x  <=>  tau*x - y = 0
    return PlaneThroughOrigin(Vec3{tau, -1.0, 0.0});
}

Point3 reflect(const PlaneThroughOrigin& plane, const Point3& p) {
    const Vec3& n = plane.unit_normal;
    return p - 2.0 * p.dot(n) * n;
}

double RigidMotion::orthogonality_defect() const {
    const Mat3 g = linear.transpose() * linear;
    double defect = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            defect = std::max(defect, std::abs(g(i, j) - target));
        }
    return defect;
}

RigidMotion RigidMotion::reflection(const PlaneThroughOrigin& plane) {
    const Vec3& n = plane.unit_normal;
    Mat3 L = Mat3::identity();
    const double nn[3] = {n.x, n.y, n.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) L(i, j) -= 2.0 * nn[i] * nn[j];
    return {L, Vec3{}, false};
}

RigidMotion RigidMotion::mirror_x() {
    return {Mat3::diagonal(-1.0, 1.0, 1.0), Vec3{}, false};
}

RigidMotion RigidMotion::inverse() const {
    const Mat3 Lt = linear.transpose();  // orthogonal inverse
    return {Lt, -Lt.apply(translation), proper};
}

namespace {

// Newton-Schulz projection onto the nearest orthogonal matrix; the input is
// already within ~1e-10 of orthogonal so a handful of sweeps suffice.
Mat3 nearest_orthogonal(Mat3 X) {
    for (int iter = 0; iter < 8; ++iter) {
        const Mat3 XtX = X.transpose() * X;
        Mat3 Y;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += X(i, k) * XtX(k, j);
                Y(i, j) = 1.5 * X(i, j) - 0.5 * s;
            }
        X = Y;
        RigidMotion probe{X, Vec3{}, true};
        if (probe.orthogonality_defect() < 1e-15) break;
    }
    return X;
}

}  // namespace

RigidMotion compose(const RigidMotion& a, const RigidMotion& b) {
    RigidMotion r;
    r.linear = a.linear * b.linear;
    r.translation = a.linear.apply(b.translation) + a.translation;
    r.proper = (a.proper == b.proper);
    if (r.orthogonality_defect() > kRenormThreshold) {
        r.linear = nearest_orthogonal(r.linear);
        g_renorm_count.fetch_add(1, std::memory_order_relaxed);
    }
    return r;
}

std::int64_t renormalization_count() {
    return g_renorm_count.load(std::memory_order_relaxed);
}

void reset_renormalization_count() {
    g_renorm_count.store(0, std::memory_order_relaxed);
}

double planar_curvature(const PlanarCurve& c, double u) {
    if (!c.contains(u)) {
        throw std::domain_error("planar_curvature: parameter outside curve interval");
    }
    const double g1 = c.deriv(u);
    const double g2 = c.second_deriv(u);
    return std::abs(g2) / std::pow(1.0 + g1 * g1, 1.5);
}

double miter_turn_angle(double tau) {
    if (!(tau > 0.0)) {
        throw std::domain_error("miter_turn_angle: tau must be positive");
    }
    const double c = (tau * tau - 1.0) / (tau * tau + 1.0);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace klein::geom
