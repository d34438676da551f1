#pragma once

#include "siegel/boundary.hpp"

namespace siegel {

// Conformal angles of the critical orbit relative to the Siegel boundaries.
// A locates f(c2) on the 0-boundary (angle 0 pinned at c1); A_tilde locates
// c2 on the infinity-boundary (angle 0 pinned at f(c1)). On the locus where
// both critical points sit on the boundaries, A = A_tilde + 2 pi theta.
struct AngleMeasurement {
    double A = 0.0;        // in [0, 2 pi)
    double A_tilde = 0.0;  // in [0, 2 pi)
    double match_error = 0.0;
    std::size_t samples_used = 0;
    double max_gap = 0.0;          // worst adjacent spacing of the two curves
    double nearest_frac = 0.0;     // angle fraction of the nearest node for A
    std::size_t nearest_index = 0; // orbit index of that node
};

struct AngleResult {
    bool ok = false;
    AngleMeasurement m;
    std::string fail_reason;
};

// |A - A_tilde - 2 pi theta| folded into [0, pi].
double angle_defect(const AngleMeasurement& m, double theta);

// Locate `target` on the curve: nearest node, projection onto the two
// angle-adjacent segments, angle interpolated linearly in arclength.
// Returns the angle as a fraction in [0,1) plus the chart distance.
struct CurveMatch {
    double frac = 0.0;
    double dist = 0.0;
    std::size_t node_index = 0;   // position in the sorted node list
    std::size_t orbit_index = 0;  // orbit index n of the nearest node
    double node_frac = 0.0;
};
CurveMatch locate_on_curve(const BoundaryCurve& curve, cplx target);

// Builds the two boundary curves from the orbits of c1 and f(c1) and measures
// both angles. Does not demand an OnGamma verdict: near the critical locus
// the same measurement applies, with the mismatch reported in match_error.
AngleResult measure_angle(const MapParams& p, const ClassifyOptions& opts = {});

// The guarded form: classifies first and refuses anything but OnGamma.
AngleResult conformal_angle(const MapParams& p, const ClassifyOptions& opts = {});

}  // namespace siegel
