#pragma once

#include "siegel/angle.hpp"

namespace siegel {

struct RayOptions {
    double t_lo = 1.0 / 3.0;
    double t_hi = 3.0;  // keep t_hi = 1/t_lo: a reciprocal bracket makes the
                        // scan grid map onto itself under the conjugacy
    double tol = 1e-3;
    int scan_points = 48;  // coarse crossing scan along the ray
    int undetermined_retries = 3;
    ClassifyOptions classify;
};

struct RayResult {
    double phi = 0.0;
    bool ok = false;
    bool undetermined_polluted = false;
    std::string fail_reason;
    double t_on = 0.0;    // radius of the returned point
    cplx alpha;           // t_on * e^{i phi}
    double width = 0.0;   // final bracket width (OnGamma band, at least tol)
    double band_lo = 0.0; // last radius still InteriorType
    double band_hi = 0.0; // first radius ExteriorType
    Verdict lo_verdict = Verdict::Undetermined;
    Verdict hi_verdict = Verdict::Undetermined;
    int classify_calls = 0;
};

// Bisection along the ray arg(alpha) = phi for the radius where the
// critical-point configuration switches from InteriorType (inner bracket)
// to ExteriorType (outer bracket).
RayResult switchover_on_ray(const RotationNumber& theta, double phi, const RayOptions& opts);

struct GammaRecord {
    double phi = 0.0;
    cplx alpha;
    double width = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
    bool angle_ok = false;
    double A = 0.0;
    double A_tilde = 0.0;
    double match_error = 0.0;
};

struct GammaCurve {
    RotationNumber theta;
    std::vector<GammaRecord> records;  // ordered by phi; only successful rays
    std::vector<RayResult> gaps;       // failed rays, kept for diagnostics
    std::vector<bool> edge_monotone;   // per consecutive record pair
    double monotone_fraction = 0.0;
    int orientation_sign = 0;          // majority sign of the A increments

    bool has_gaps() const { return !gaps.empty(); }
    std::vector<cplx> points() const;
};

struct TraceOptions {
    int rays = 64;
    RayOptions ray;
    int threads = 0;
};

// First ray angle of the fan that alpha -> e^{-6 pi i theta}/alpha maps onto
// itself: with phi_j = offset + 2 pi j / M the map sends ray j to ray -j, so
// traced points come in exactly conjugate pairs.
double symmetric_fan_offset(const RotationNumber& theta);

GammaCurve trace_gamma(const RotationNumber& theta, const TraceOptions& opts = {});

struct ProbeCheck {
    double phi = 0.0;
    cplx alpha_on;
    Verdict outer = Verdict::Undetermined;
    Verdict inner = Verdict::Undetermined;
    bool ok = false;
    // If the probe fails, the ray bracket is rescanned in 8 subintervals and
    // every verdict switchover found is reported here as (t_lo, t_hi).
    std::vector<std::pair<double, double>> rescan_brackets;
};

struct GammaReport {
    int winding = 0;
    bool winding_ok = false;
    double iota_hausdorff = 0.0;
    bool iota_ok = false;
    std::vector<ProbeCheck> probes;
    bool probes_ok = false;
    double monotone_fraction = 0.0;

    bool pass() const { return winding_ok && iota_ok && probes_ok; }
};

struct VerifyOptions {
    double iota_hausdorff_max = 1e-2;
    double probe_offset = 0.02;  // relative radial offset of the probes
    int probe_rays = 8;
    RayOptions ray;  // classification budgets + rescan bracket for failures
    int threads = 0;
};

// Checks the traced curve against its global properties: winding +-1 around
// alpha = 0, invariance under alpha -> e^{-6 pi i theta}/alpha, and correct
// verdicts just inside/outside sampled rays.
GammaReport verify_gamma(const GammaCurve& curve, const VerifyOptions& opts = {});

}  // namespace siegel
