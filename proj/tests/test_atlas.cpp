#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "klein/atlas.hpp"

using namespace klein;
using namespace klein::atlas;
using geom::Vec3;

TEST_CASE("config validation") {
    CHECK_THROWS_AS(FigureConfig(2, 1.0, 2.0), ConfigError);
    CHECK_THROWS_AS(FigureConfig(3, 1.0, 1.0), ConfigError);  // needs s > 2/sqrt(3)
    CHECK_NOTHROW(FigureConfig(3, 1.0, 1.16));
    CHECK_THROWS_AS(FigureConfig(3, -1.0, 2.0), ConfigError);
}

TEST_CASE("build_domain layout for n = 3") {
    FlatDomain d = build_domain(FigureConfig(3, 1.0, 2.0));
    CHECK(d.u_min == doctest::Approx(-M_PI));
    CHECK(d.u_max == doctest::Approx(M_PI));
    CHECK(d.v_min == doctest::Approx(-1.0));
    CHECK(d.v_max == doctest::Approx(5.0));

    CHECK(d.strip_center(0) == 0.0);
    CHECK(d.strip_center(1) == 2.0);
    CHECK(d.strip_center(2) == 4.0);
    CHECK(d.strip_sign(0) == 1);
    CHECK(d.strip_sign(1) == -1);
    CHECK(d.strip_sign(2) == 1);

    // crease curves centered on the strips with mirrored amplitudes
    const double amp = 1.0 / std::sqrt(3.0);
    CHECK(d.crease_v(0, M_PI / 2) == doctest::Approx(amp).epsilon(1e-12));
    CHECK(d.crease_v(1, M_PI / 2) == doctest::Approx(2.0 - amp).epsilon(1e-12));
    CHECK(d.crease_v(2, M_PI / 2) == doctest::Approx(4.0 + amp).epsilon(1e-12));

    // odd n: orientation-reversing identification
    auto [ud, vd] = d.deck(0.3, -1.0, +1);
    CHECK(ud == doctest::Approx(-0.3));
    CHECK(vd == doctest::Approx(5.0));

    // even n: direct identification
    FlatDomain d4 = build_domain(FigureConfig(4, 1.0, 3.0));
    auto [u4, v4] = d4.deck(0.3, -1.5, +1);
    CHECK(u4 == doctest::Approx(0.3));
    CHECK(v4 == doctest::Approx(10.5));

    // identifications are involutions in the quotient
    auto [ub, vb] = d.deck(ud, vd, -1);
    CHECK(ub == doctest::Approx(0.3));
    CHECK(vb == doctest::Approx(-1.0));
}

TEST_CASE("quotient distance identifies boundary points") {
    FlatDomain d = build_domain(FigureConfig(3, 1.0, 2.0));
    CHECK(d.quotient_distance(0.4, -1.0, -0.4, 5.0) < 1e-12);
    CHECK(d.quotient_distance(-M_PI, 0.7, M_PI, 0.7) < 1e-12);
    CHECK(d.quotient_distance(0.0, 0.0, 1.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("chain_motions closes the triangle") {
    AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    CHECK(a.closure_residual() < 1e-9);

    // G_0 is the identity
    CHECK(a.strip_motion(0).orthogonality_defect() < 1e-15);
    CHECK((a.strip_motion(0).apply(Vec3{1, 2, 3}) - Vec3{1, 2, 3}).norm() < 1e-15);

    // vertices form an equilateral triangle with edge length s
    const auto& v = a.polygon_vertices();
    REQUIRE(v.size() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK((v[(k + 1) % 3] - v[k]).norm() == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(std::abs(v[k].z) < 1e-9);  // planar polygon
    }
}

TEST_CASE("chain_motions closes the square (n = 4)") {
    AtlasMap a = chain_motions(FigureConfig(4, 1.0, 3.0));
    CHECK(a.closure_residual() < 1e-9);
    const auto& v = a.polygon_vertices();
    REQUIRE(v.size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK((v[(k + 1) % 4] - v[k]).norm() == doctest::Approx(3.0).epsilon(1e-9));
    }
    // square diagonals
    CHECK((v[2] - v[0]).norm() == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK((v[3] - v[1]).norm() == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("phi continuity across strips and creases") {
    AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    const FlatDomain& d = a.domain();

    for (int b = 1; b < 3; ++b) {
        const double v = b * 2.0 - 1.0;  // strip boundary
        for (int i = 0; i <= 1000; ++i) {
            const double u = -M_PI + 2 * M_PI * i / 1000.0;
            CHECK((a.phi(u, v - 1e-10) - a.phi(u, v + 1e-10)).norm() < 1e-9);
        }
    }
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i <= 1000; ++i) {
            const double u = -M_PI + 2 * M_PI * i / 1000.0;
            const double vc = d.crease_v(k, u);
            CHECK((a.phi(u, vc - 1e-12) - a.phi(u, vc + 1e-12)).norm() < 1e-11);
        }
    }
}

TEST_CASE("phi respects the vertical and horizontal identifications") {
    for (int n : {3, 4, 5, 6}) {
        FigureConfig cfg(n, 1.0, 2.0 * (1.0 / std::tan(M_PI / n)) * 1.2);
        AtlasMap a = chain_motions(cfg);
        const FlatDomain& d = a.domain();

        double vert = 0.0, horiz = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double t = static_cast<double>(i) / 1000.0;
            const double v = d.v_min + (d.v_max - d.v_min) * t;
            vert = std::max(vert, (a.phi(d.u_min, v) - a.phi(d.u_max, v)).norm());

            const double u = d.u_min + (d.u_max - d.u_min) * t;
            auto [ut, vt] = d.deck(u, d.v_min, +1);
            horiz = std::max(horiz, (a.phi(u, d.v_min) - a.phi(ut, vt)).norm());
        }
        CHECK(vert < 1e-12);
        CHECK(horiz < 1e-9);
    }
}

TEST_CASE("Klein identification needs the u-mirror for n = 3") {
    AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    const FlatDomain& d = a.domain();
    double wrong = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double u = d.u_min + (d.u_max - d.u_min) * i / 100.0;
        wrong = std::max(wrong, (a.phi(u, d.v_min) - a.phi(u, d.v_max)).norm());
    }
    CHECK(wrong > 0.1);  // dropping the mirror must fail badly

    // spec example: |phi(0.3, -1) - phi(-0.3, 5)|
    CHECK((a.phi(0.3, -1.0) - a.phi(-0.3, 5.0)).norm() < 1e-9);
}

TEST_CASE("every image point lies on some tube surface") {
    AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    const FlatDomain& d = a.domain();
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> du(d.u_min, d.u_max), dv(d.v_min, d.v_max);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = du(rng), v = dv(rng);
        const Vec3 p = a.phi(u, v);
        const int j = a.nearest_axis(p);
        worst = std::max(worst, std::abs(a.distance_to_axis(p, j) - 1.0));
        // the owning cylinder index agrees with the nearest axis
        CHECK(j == a.cylinder_index(u, v));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("analytic jacobian is orthonormal and matches finite differences") {
    AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    const FlatDomain& d = a.domain();
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> du(d.u_min + 0.01, d.u_max - 0.01);
    std::uniform_real_distribution<double> dv(d.v_min + 0.01, d.v_max - 0.01);
    const double h = 1e-5;
    double analytic = 0.0, fd = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double u = du(rng), v = dv(rng);
        const int k = d.strip_index(v);
        if (std::abs(v - d.crease_v(k, u)) < 3 * h) continue;
        if (std::abs(v - (d.strip_center(k) - 1.0)) < 3 * h) continue;
        if (std::abs(v - (d.strip_center(k) + 1.0)) < 3 * h) continue;
        auto [cu, cv] = a.jacobian(u, v);
        analytic = std::max({analytic, std::abs(cu.dot(cu) - 1.0),
                             std::abs(cv.dot(cv) - 1.0), std::abs(cu.dot(cv))});
        const Vec3 gu = (a.phi(u + h, v) - a.phi(u - h, v)) / (2 * h);
        const Vec3 gv = (a.phi(u, v + h) - a.phi(u, v - h)) / (2 * h);
        fd = std::max({fd, (gu - cu).norm(), (gv - cv).norm()});
    }
    CHECK(analytic < 1e-12);
    CHECK(fd < 1e-6);
}

TEST_CASE("orientability matches n mod 2") {
    CHECK(orientability(FigureConfig(3, 1.0, 2.0)) == Orientability::non_orientable);
    CHECK(orientability(FigureConfig(4, 1.0, 3.0)) == Orientability::orientable);
    CHECK(orientability(FigureConfig(5, 1.0, 3.0)) == Orientability::non_orientable);
    CHECK(orientability(FigureConfig(6, 1.0, 4.0)) == Orientability::orientable);
}

TEST_CASE("exceptional sets: counts and cross-checks") {
    AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    ExceptionalSets ex = exceptional_sets(a);
    CHECK(ex.creases.size() == 3);
    CHECK(ex.inflections.size() == 6);

    for (const auto& ip : ex.inflections) {
        // inflection images sit where the fold dihedral degenerates
        const double ul = a.domain().strip_sign(ip.strip) * ip.u;
        CHECK(std::abs(crease::fold_dihedral(a.elbow_spec(), ul) - M_PI) < 1e-9);
        // and on the crease itself
        CHECK(std::abs(ip.v - a.domain().crease_v(ip.strip, ip.u)) < 1e-12);
        // image lies at distance r from two adjacent axes (both ellipses meet there)
        int near = 0;
        for (int j = 0; j < 3; ++j) {
            if (std::abs(a.distance_to_axis(ip.image, j) - 1.0) < 1e-9) ++near;
        }
        CHECK(near >= 2);
    }
}
