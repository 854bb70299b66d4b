#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "klein/analysis.hpp"

using namespace klein;
using namespace klein::analysis;
using atlas::chain_motions;
using atlas::FigureConfig;
using geom::Vec3;

namespace {

FigureConfig config_for(int n) {
    return FigureConfig(n, 1.0, 2.4 / std::tan(M_PI / n));
}

}  // namespace

TEST_CASE("metric residual is clean for the real map") {
    atlas::AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    CHECK(metric_residual(a, 5000, MetricMode::analytic, 0, 1e-12).pass);
    CHECK(metric_residual(a, 5000, MetricMode::finite_difference, 1, 1e-6).pass);
}

TEST_CASE("metric probe detects a scaled map") {
    atlas::AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    MapFn scaled = [&](double u, double v) { return a.phi(u, v) * 1.01; };
    CheckResult c = metric_residual_of(scaled, a, 2000, 0, 1e-6);
    CHECK_FALSE(c.pass);
    // ||J^T J - I|| for a 1.01-scaled isometry is 1.01^2 - 1
    CHECK(c.max_residual == doctest::Approx(0.0201).epsilon(1e-3));
}

TEST_CASE("crease and closure checks pass; sabotaged mirror fails") {
    atlas::AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    Tolerances tol;
    for (const auto& c : crease_and_closure_checks(a, tol)) {
        INFO(c.name);
        CHECK(c.pass);
    }
    auto sabotaged = crease_and_closure_checks(a, tol, false);
    bool horizontal_failed = false;
    for (const auto& c : sabotaged) {
        if (c.name == "horizontal_identification") horizontal_failed = !c.pass;
    }
    CHECK(horizontal_failed);
}

TEST_CASE("closed-form intersection curve for n = 3") {
    atlas::AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    IntersectionCurve c = intersection_closed_form(a, 0);

    // carrier plane y = -sqrt(3) x: normal proportional to (sqrt(3), 1, 0)
    const Vec3 expect = Vec3{std::sqrt(3.0), 1.0, 0.0}.normalized();
    CHECK(std::abs(std::abs(c.carrier_normal.dot(expect)) - 1.0) < 1e-12);
    CHECK(c.carrier_point.norm() < 1e-12);  // vertex V_0 is the origin

    // pre-image sinusoid has amplitude r/tau = sqrt(3)
    SineArc arc = c.domain_preimage(TubeSide::incoming);
    CHECK(std::abs(arc.amplitude) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(arc.v_center == doctest::Approx(0.0));
    CHECK(arc.u0 == doctest::Approx(0.0));
    CHECK(arc.u1 == doctest::Approx(M_PI));
    // the two tube sides tile one full period
    SineArc out_arc = c.domain_preimage(TubeSide::outgoing);
    CHECK(out_arc.u0 == doctest::Approx(-M_PI));
    CHECK(out_arc.u1 == doctest::Approx(0.0));

    // curve points sit on both tube surfaces and in the carrier plane
    for (int i = 0; i <= 64; ++i) {
        const double w = M_PI * i / 64.0;
        const auto p = c.image_at(w);
        CHECK(std::abs(a.distance_to_axis(p, 0) - 1.0) < 1e-12);
        CHECK(std::abs(a.distance_to_axis(p, 1) - 1.0) < 1e-12);
        CHECK(std::abs((p - c.carrier_point).dot(c.carrier_normal)) < 1e-12);
    }

    CHECK_THROWS_AS(intersection_closed_form(a, 3), ConfigError);
    CHECK_THROWS_AS(intersection_closed_form(a, -1), ConfigError);
}

TEST_CASE("pre-image sinusoid maps onto the curve through phi") {
    atlas::AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    for (int k = 0; k < 3; ++k) {
        IntersectionCurve c = intersection_closed_form(a, k);
        for (auto side : {TubeSide::incoming, TubeSide::outgoing}) {
            SineArc arc = c.domain_preimage(side);
            const auto poly = c.sample(4096);
            for (int i = 1; i < 64; ++i) {
                const double u = arc.u0 + (arc.u1 - arc.u0) * i / 64.0;
                auto [uc, vc] = a.domain().canonical(u, arc.eval(u, 1.0));
                const auto p = a.phi(uc, vc);
                CHECK(hausdorff_to_polyline({p}, poly) < 1e-6);
            }
        }
    }
}

TEST_CASE("oracle matches the closed form for n = 3..6") {
    for (int n : {3, 4, 5, 6}) {
        atlas::AtlasMap a = chain_motions(config_for(n));
        for (int k = 0; k < n; ++k) {
            const auto oracle = intersection_oracle(a, k, 128);
            CHECK(oracle.size() > 100);
            auto [fold_pts, pass_pts] = split_oracle_clusters(a, k, oracle);
            CHECK(!fold_pts.empty());
            CHECK(!pass_pts.empty());

            IntersectionCurve c = intersection_closed_form(a, k);
            std::vector<geom::Point3> full;
            for (int i = 0; i <= 8192; ++i) {
                full.push_back(c.image_at(-M_PI + 2.0 * M_PI * i / 8192.0));
            }
            CHECK(hausdorff_to_polyline(pass_pts, full) < 1e-6);

            const crease::ImageCrease fold(a.elbow_spec());
            std::vector<geom::Point3> fold_poly;
            for (int i = 0; i <= 8192; ++i) {
                fold_poly.push_back(a.strip_motion(k).apply(
                    fold.at(-M_PI + 2.0 * M_PI * i / 8192.0, 1.0)));
            }
            CHECK(hausdorff_to_polyline(fold_pts, fold_poly) < 1e-6);
        }
    }
}

TEST_CASE("clip_arc_to_domain") {
    atlas::FlatDomain d = atlas::build_domain(FigureConfig(3, 1.0, 2.0));

    // fully inside: unchanged
    SineArc inside{2.0, 0.5, -1.0, 1.0};
    auto pieces = clip_arc_to_domain(d, inside);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].v_center == doctest::Approx(2.0));
    CHECK(pieces[0].u0 == doctest::Approx(-1.0));
    CHECK(pieces[0].u1 == doctest::Approx(1.0));

    // dips below v_min = -1: the out-of-range piece comes back mirrored near
    // v_max (Klein deck, shift +6, u negated)
    SineArc dipping{0.0, std::sqrt(3.0), -M_PI, 0.0};
    pieces = clip_arc_to_domain(d, dipping);
    REQUIRE(pieces.size() >= 2);
    double covered = 0.0;
    for (const auto& p : pieces) {
        covered += p.u1 - p.u0;
        // each piece stays inside the rectangle
        for (int i = 0; i <= 32; ++i) {
            const double u = p.u0 + (p.u1 - p.u0) * i / 32.0;
            const double v = p.eval(u, 1.0);
            CHECK(v >= d.v_min - 1e-9);
            CHECK(v <= d.v_max + 1e-9);
        }
        // and projects to the same quotient points as the original arc
        const double um = 0.5 * (p.u0 + p.u1);
        bool matches = false;
        for (int i = 0; i <= 4096; ++i) {
            const double u = dipping.u0 + (dipping.u1 - dipping.u0) * i / 4096.0;
            if (d.quotient_distance(um, p.eval(um, 1.0), u, dipping.eval(u, 1.0)) < 2e-3) {
                matches = true;
                break;
            }
        }
        CHECK(matches);
    }
    CHECK(covered == doctest::Approx(M_PI).epsilon(1e-6));
}

TEST_CASE("cone angle is 2*pi away from inflection points") {
    atlas::AtlasMap a = chain_motions(FigureConfig(3, 1.0, 2.0));
    const double eps = 1e-3;
    // interior point
    CHECK(std::abs(cone_angle(a, 0.9, -0.6, eps) - 2 * M_PI) < 1e-4);
    // non-inflection crease point
    const double u = M_PI / 2;
    CHECK(std::abs(cone_angle(a, u, a.domain().crease_v(0, u), eps) - 2 * M_PI) < 1e-4);
    // point whose probe circle crosses the identifications
    CHECK(std::abs(cone_angle(a, M_PI - 1e-4, -1.0, eps) - 2 * M_PI) < 1e-4);
}

TEST_CASE("handedness sweep counts n flips and detects the mirrored wrap") {
    for (int n : {3, 4, 5}) {
        atlas::AtlasMap a = chain_motions(config_for(n));
        HandednessSweep sweep = handedness_sweep(a, 0.37 * M_PI);
        CHECK(sweep.flips == n);
        CHECK(sweep.wrap_reversed == (n % 2 == 1));
    }
}

TEST_CASE("injectivity scan finds no unpredicted collisions") {
    for (auto [n, s] : {std::pair{3, 2.0}, std::pair{4, 3.0}}) {
        atlas::AtlasMap a = chain_motions(FigureConfig(n, 1.0, s));
        CheckResult c = injectivity_scan(a, 100000, 1e-3, 0);
        INFO(c.notes);
        CHECK(c.pass);
    }
}

TEST_CASE("verify_all end to end") {
    VerificationReport report = verify_all(FigureConfig(3, 1.0, 2.0));
    for (const auto& c : report.checks) {
        INFO(c.name << " residual " << c.max_residual << " tol " << c.tolerance);
        CHECK(c.pass);
    }
    CHECK(report.overall_pass);
    CHECK(report.exceptional_points.size() == 6);
    for (const auto& p : report.exceptional_points) {
        CHECK(std::abs(p.dihedral - M_PI) < 1e-9);
        // diagnostic only: no asserted target at inflection points, but the
        // measured values should at least be sane
        CHECK(std::abs(p.cone_angle_1e2 - 2 * M_PI) < 1e-2);
        CHECK(std::abs(p.cone_angle_1e3 - 2 * M_PI) < 1e-2);
    }

    CHECK(verify_all(FigureConfig(4, 1.0, 3.0)).overall_pass);
    CHECK_THROWS_AS(verify_all(FigureConfig(3, 1.0, 1.0)), ConfigError);
}
