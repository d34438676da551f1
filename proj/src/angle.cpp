#include "siegel/angle.hpp"

#include <algorithm>
#include <cmath>

namespace siegel {

double angle_defect(const AngleMeasurement& m, double theta) {
    double d = std::fmod(m.A - m.A_tilde - 2.0 * M_PI * theta, 2.0 * M_PI);
    if (d < 0) d += 2.0 * M_PI;
    return std::min(d, 2.0 * M_PI - d);
}

CurveMatch locate_on_curve(const BoundaryCurve& curve, cplx target) {
    const auto& nodes = curve.nodes;
    const std::size_t m = nodes.size();
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        double d = std::abs(nodes[i].w - target);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }

    CurveMatch match;
    match.node_index = best;
    match.orbit_index = nodes[best].n;
    match.node_frac = nodes[best].angle;
    match.frac = nodes[best].angle;
    match.dist = best_d;

    // Projection onto the two angle-adjacent segments, angle interpolated
    // linearly along the chord.
    auto consider = [&](std::size_t ia, std::size_t ib) {
        cplx a = nodes[ia].w, b = nodes[ib].w;
        cplx ab = b - a;
        double len2 = std::norm(ab);
        if (len2 == 0.0) return;
        double t = std::clamp(((target - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
        double d = std::abs(target - (a + t * ab));
        if (d < match.dist) {
            double gap = nodes[ib].angle - nodes[ia].angle;
            if (gap < 0) gap += 1.0;
            double frac = nodes[ia].angle + t * gap;
            if (frac >= 1.0) frac -= 1.0;
            match.dist = d;
            match.frac = frac;
        }
    };
    consider((best + m - 1) % m, best);
    consider(best, (best + 1) % m);
    return match;
}

AngleResult measure_angle(const MapParams& p, const ClassifyOptions& opts) {
    AngleResult res;

    std::vector<TrapDisk> traps;
    try {
        auto lin0 = solve_linearizer(taylor_f2(p, LimitCenter::at_zero, opts.series_order),
                                     opts.series_order);
        auto lin_inf = solve_linearizer(taylor_f2(p, LimitCenter::at_infinity, opts.series_order),
                                        opts.series_order);
        traps.push_back(trap_disk(lin0, opts.trap_fraction));
        traps.push_back(trap_disk(lin_inf, opts.trap_fraction));
    } catch (const std::exception& e) {
        res.fail_reason = std::string("trap construction: ") + e.what();
        return res;
    }

    CriticalPair cp = critical_points(p);
    OrbitTrace tr0 = orbit(p, SpherePoint::affine(cp.c1), opts.orbit_n, traps);
    CurveOutcome curve0 = boundary_curve(tr0, p.theta.value(), LimitCenter::at_zero, opts.curve);
    if (!curve0.ok()) {
        res.fail_reason = "0-boundary curve failed (c1 orbit)";
        return res;
    }

    SpherePoint fc1 = eval_f(p, SpherePoint::affine(cp.c1));
    OrbitTrace tri = orbit(p, fc1, opts.orbit_n, traps);
    CurveOutcome curve_inf = boundary_curve(tri, p.theta.value(), LimitCenter::at_infinity, opts.curve);
    if (!curve_inf.ok()) {
        res.fail_reason = "infinity-boundary curve failed (f(c1) orbit)";
        return res;
    }

    // Targets: f(c2) on the 0-side, c2 in the 1/z chart on the infinity side.
    SpherePoint fc2 = eval_f(p, SpherePoint::affine(cp.c2));
    cplx target0 = fc2.u / fc2.v;
    cplx target_inf = 1.0 / cp.c2;

    CurveMatch m0 = locate_on_curve(*curve0.curve, target0);
    CurveMatch mi = locate_on_curve(*curve_inf.curve, target_inf);

    AngleMeasurement m;
    m.A = 2.0 * M_PI * m0.frac;
    m.A_tilde = 2.0 * M_PI * mi.frac;
    m.match_error = std::max(m0.dist, mi.dist);
    m.samples_used = opts.orbit_n;
    m.max_gap = std::max(curve0.curve->max_gap, curve_inf.curve->max_gap);
    m.nearest_frac = m0.node_frac;
    m.nearest_index = m0.orbit_index;

    if (m.match_error >= 10.0 * m.max_gap) {
        res.fail_reason = "match error exceeds 10x the curve spacing";
        res.m = m;
        return res;
    }
    res.ok = true;
    res.m = m;
    return res;
}

AngleResult conformal_angle(const MapParams& p, const ClassifyOptions& opts) {
    Classification cl = classify_parameter(p, opts);
    if (cl.verdict != Verdict::OnGamma) {
        AngleResult res;
        res.fail_reason = std::string("parameter not OnGamma (verdict: ") +
                          to_string(cl.verdict) + ")";
        return res;
    }
    return measure_angle(p, opts);
}

}  // namespace siegel
