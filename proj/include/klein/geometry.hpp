#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "klein/errors.hpp"

namespace klein::geom {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double c) const { return {x * c, y * c, z * c}; }
    Vec3 operator/(double c) const { return {x / c, y / c, z / c}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double squared_norm() const { return dot(*this); }
    double norm() const { return std::sqrt(squared_norm()); }
    Vec3 normalized() const { return *this / norm(); }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

using Point3 = Vec3;

// Row-major 3x3 matrix; only what rigid motions need.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int i, int j) { return m[3 * i + j]; }
    double operator()(int i, int j) const { return m[3 * i + j]; }

    static Mat3 identity() {
        Mat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }
    static Mat3 diagonal(double a, double b, double c) {
        Mat3 r;
        r(0, 0) = a; r(1, 1) = b; r(2, 2) = c;
        return r;
    }

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double determinant() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) -
               m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

// Plane through the origin, stored by unit normal. General affine planes are
// handled by conjugating with a RigidMotion whose translation moves a chosen
// point to the origin.
struct PlaneThroughOrigin {
    Vec3 unit_normal;

    explicit PlaneThroughOrigin(const Vec3& normal);

    // Slope plane y = tau*x (normal in the xy-plane).
    static PlaneThroughOrigin slope_plane(double tau);
};

// Householder reflection across a plane through the origin.
Point3 reflect(const PlaneThroughOrigin& plane, const Point3& p);

struct RigidMotion {
    Mat3 linear = Mat3::identity();
    Vec3 translation{};
    bool proper = true;

    Point3 apply(const Point3& p) const { return linear.apply(p) + translation; }
    Vec3 apply_vector(const Vec3& v) const { return linear.apply(v); }

    // max|L^T L - I|
    double orthogonality_defect() const;

    static RigidMotion identity() { return {}; }
    static RigidMotion translate(const Vec3& t) { return {Mat3::identity(), t, true}; }
    static RigidMotion reflection(const PlaneThroughOrigin& plane);
    static RigidMotion mirror_x();  // diag(-1, 1, 1)

    RigidMotion inverse() const;
};

// (a o b)(p) = a(b(p)). Re-normalizes the linear part when accumulated
// roundoff pushes the orthogonality defect past 1e-10; each such event bumps
// renormalization_count().
RigidMotion compose(const RigidMotion& a, const RigidMotion& b);

std::int64_t renormalization_count();
void reset_renormalization_count();

// Graph curve u -> (u, A*sin(u/r)) with exact derivatives.
struct PlanarCurve {
    double amplitude = 0.0;   // A
    double radius = 1.0;      // r in sin(u/r)
    double u_min = 0.0;
    double u_max = 0.0;

    double eval(double u) const { return amplitude * std::sin(u / radius); }
    double deriv(double u) const { return amplitude / radius * std::cos(u / radius); }
    double second_deriv(double u) const {
        return -amplitude / (radius * radius) * std::sin(u / radius);
    }
    bool contains(double u) const { return u >= u_min && u <= u_max; }
};

// |g''| / (1 + g'^2)^{3/2}; throws std::domain_error outside the interval.
double planar_curvature(const PlanarCurve& c, double u);

// Angle between the incoming axis direction (0,1,0) and its reflection across
// the plane y = tau*x: arccos((tau^2 - 1) / (tau^2 + 1)).
double miter_turn_angle(double tau);

}  // namespace klein::geom
