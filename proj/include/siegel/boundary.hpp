#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "siegel/linearize.hpp"

namespace siegel {

struct TrapHit {
    std::size_t step = 0;
    LimitCenter which = LimitCenter::at_zero;
};

// Orbit of f^2 in homogeneous coordinates; stops early if a trap is entered.
struct OrbitTrace {
    SpherePoint seed;
    std::vector<SpherePoint> points;  // z_0 .. z_k
    std::optional<TrapHit> trap_entry;
};

OrbitTrace orbit(const MapParams& p, const SpherePoint& seed, std::size_t n_steps,
                 const std::vector<TrapDisk>& traps);

// Closed polyline through a boundary orbit, ordered by the angles 2 pi n theta
// the points occupy under the conjugacy of f^2 to the rigid rotation.
struct BoundaryCurve {
    LimitCenter center = LimitCenter::at_zero;
    struct Node {
        std::size_t n;        // orbit index of this point
        double angle;         // frac(n theta), in [0,1)
        cplx w;               // chart coordinate
    };
    std::vector<Node> nodes;  // sorted by angle
    double r_min = 0.0, r_max = 0.0;
    double max_gap = 0.0;     // largest chart distance between angle-adjacent points
    int winding = 0;

    std::vector<cplx> points() const;
};

enum class CurveFail {
    none,
    trap_entry,     // seed fell into a trap: not a boundary orbit
    too_short,
    not_in_annulus,
    bad_winding,
    self_intersects,
    gap_spike,      // an adjacent gap comparable to the curve scale: the
                    // trace is an invariant loop plus stray transient points,
                    // not a recurrent boundary orbit
};

struct CurveOutcome {
    std::optional<BoundaryCurve> curve;
    CurveFail fail = CurveFail::none;
    bool ok() const { return fail == CurveFail::none; }
};

struct CurveOptions {
    double annulus_min = 1e-4;
    double annulus_max = 1e4;
    bool run_simplicity = true;
    double max_gap_ratio = 0.25;  // max adjacent gap relative to the outer radius
};

CurveOutcome boundary_curve(const OrbitTrace& trace, double theta, LimitCenter center,
                            const CurveOptions& opts = {});

// Symmetric Hausdorff distance between the chart point sets of two curves
// around the same center.
double hausdorff(const BoundaryCurve& a, const BoundaryCurve& b);

enum class Verdict { ExteriorType, InteriorType, OnGamma, Undetermined };

const char* to_string(Verdict v);

struct ClassifyOptions {
    std::size_t orbit_n = 20000;
    int series_order = 128;
    double trap_fraction = 0.5;
    CurveOptions curve;
    bool keep_curves = false;
};

// Evidence about one critical point relative to its only possible boundary
// (c1 vs the Siegel disk at 0, c2 vs the one at infinity).
struct CritEvidence {
    bool trap_entry = false;
    TrapHit hit;
    bool curve_ok = false;
    CurveFail curve_fail = CurveFail::none;
    std::optional<BoundaryCurve> curve;

    bool on_boundary() const { return !trap_entry && curve_ok; }
};

struct Classification {
    Verdict verdict = Verdict::Undetermined;
    CritEvidence c1, c2;
    bool traps_ok = false;
    std::string trap_failure;  // nonempty if linearizer/trap construction failed
    TrapDisk trap0, trap_inf;
};

// Decides the critical-point configuration at alpha:
//   ExteriorType  c1 on the 0-boundary, c2 strictly inside the Fatou set,
//   InteriorType  the mirror case,
//   OnGamma       both critical points on their boundaries,
//   Undetermined  anything the evidence does not settle.
Classification classify_parameter(const MapParams& p, const ClassifyOptions& opts = {});

}  // namespace siegel
