#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "klein/atlas.hpp"

namespace klein::analysis {

using atlas::AtlasMap;
using atlas::FigureConfig;
using atlas::FlatDomain;
using geom::Point3;
using geom::Vec3;

struct CheckResult {
    std::string name;
    long samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string notes;

    static CheckResult make(std::string name, long samples, double max_residual,
                            double tolerance, std::string notes = "");
};

struct Tolerances {
    double analytic = 1e-12;  // exact-formula identities
    double chain = 1e-9;      // identities through chained motions
    double fd = 1e-6;         // finite differences and oracle comparisons
};

struct ExceptionalPointDiagnostic {
    double u = 0.0, v = 0.0;
    Point3 image;
    double dihedral = 0.0;
    double cone_angle_1e2 = 0.0;  // measured at eps = 1e-2 * r
    double cone_angle_1e3 = 0.0;  // measured at eps = 1e-3 * r
};

struct VerificationReport {
    int n = 0;
    double r = 0.0, s = 0.0;
    std::uint64_t seed = 0;
    Tolerances tolerances;
    std::vector<CheckResult> checks;
    std::vector<ExceptionalPointDiagnostic> exceptional_points;
    std::int64_t renormalizations = 0;
    bool overall_pass = false;
};

enum class MetricMode { analytic, finite_difference };

// max ||J^T J - I||_inf over stratified samples of the atlas map.
CheckResult metric_residual(const AtlasMap& atlas, int n_samples, MetricMode mode,
                            std::uint64_t seed, double tolerance);

// Same probe for an arbitrary map over the atlas domain (finite differences
// only); used by the scaled-map detector self-test.
using MapFn = std::function<Point3(double, double)>;
CheckResult metric_residual_of(const MapFn& map, const AtlasMap& atlas, int n_samples,
                               std::uint64_t seed, double tolerance);

// Continuity along creases and strip boundaries plus both edge
// identifications. apply_u_mirror=false drops the mirror from the horizontal
// identification (sabotage self-test; must fail for odd n).
std::vector<CheckResult> crease_and_closure_checks(const AtlasMap& atlas,
                                                   const Tolerances& tol,
                                                   bool apply_u_mirror = true);

// A sinusoid v(u) = v_center + amplitude * sin(u / r) over [u0, u1].
struct SineArc {
    double v_center = 0.0;
    double amplitude = 0.0;
    double u0 = 0.0, u1 = 0.0;

    double eval(double u, double r) const;
};

// Clip an arc to the domain's v-range, mapping out-of-range pieces through the
// horizontal identification.
std::vector<SineArc> clip_arc_to_domain(const FlatDomain& domain, const SineArc& arc);

// Which of the two tubes meeting at a joint carries the pre-image arc.
enum class TubeSide { incoming, outgoing };  // tube k vs tube k+1 at joint k

// The pass-through intersection of adjacent cylinders k and k+1: the second
// ellipse of the pair, in the bisector plane with normal ~ a_k + a_{k+1}.
struct IntersectionCurve {
    int pair_index = 0;
    Vec3 carrier_normal;   // unit, world coordinates
    Point3 carrier_point;  // the polygon vertex V_k

    // World-space point at local crease parameter w; the self-intersection
    // semi-ellipse is w in [0, pi r].
    Point3 image_at(double w) const;

    // Unclipped pre-image sinusoid in domain coordinates (both tube sides lie
    // on the same sinusoid; the incoming tube owns one half-period, the
    // outgoing tube the other).
    SineArc domain_preimage(TubeSide side) const;

    // Dense world-space polyline of the semi-ellipse.
    std::vector<Point3> sample(int count) const;

    // internal evaluation state
    geom::RigidMotion motion;  // G_k
    double r = 0.0, tau = 0.0;
    double strip_center_v = 0.0;
    int strip_sign = 1;
};

// Throws ConfigError for k outside 0..n-1 (only adjacent pairs are supported).
IntersectionCurve intersection_closed_form(const AtlasMap& atlas, int k);

// Brute-force locus: grid-sample cylinder k, bracket distance-to-axis(k+1) = r
// in the axial direction, refine by bisection to 1e-10. Finds both ellipses of
// the pair.
std::vector<Point3> intersection_oracle(const AtlasMap& atlas, int k, int grid_n);

// Splits oracle points by nearer carrier plane: first the fold ellipse (in the
// miter plane), second the pass-through ellipse.
std::pair<std::vector<Point3>, std::vector<Point3>> split_oracle_clusters(
    const AtlasMap& atlas, int k, const std::vector<Point3>& points);

// One-sided Hausdorff distance from each point to a curve polyline.
double hausdorff_to_polyline(const std::vector<Point3>& points,
                             const std::vector<Point3>& polyline);

// Collision scan: 3D-coincident sample pairs that are far apart in the
// quotient metric must lie near a predicted intersection curve.
CheckResult injectivity_scan(const AtlasMap& atlas, int n_samples, double eps,
                             std::uint64_t seed);

// Image length of the domain circle of radius eps around (u, v), divided by
// eps; evaluated through the identifications when the circle exits the
// rectangle. 2*pi at flat points.
double cone_angle(const AtlasMap& atlas, double u, double v, double eps);

// Handedness flips along the vertical loop u = u0: one per crease crossed.
struct HandednessSweep {
    int flips = 0;             // sign changes between adjacent bands
    bool wrap_reversed = false;  // frame mirrored across the horizontal identification
};
HandednessSweep handedness_sweep(const AtlasMap& atlas, double u0);

VerificationReport verify_all(const FigureConfig& config, const Tolerances& tol = {},
                              std::uint64_t seed = 0);

}  // namespace klein::analysis
