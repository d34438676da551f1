#include "siegel/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/geometry.hpp"

namespace siegel {

OrbitTrace orbit(const MapParams& p, const SpherePoint& seed, std::size_t n_steps,
                 const std::vector<TrapDisk>& traps) {
    if (n_steps < 1) throw std::invalid_argument("orbit: n_steps >= 1 required");
    OrbitTrace tr;
    tr.seed = seed;
    tr.points.reserve(n_steps + 1);
    SpherePoint z = seed;
    for (std::size_t n = 0;; ++n) {
        tr.points.push_back(z);
        for (const auto& t : traps) {
            if (in_trap(t, z)) {
                tr.trap_entry = TrapHit{n, t.center};
                return tr;
            }
        }
        if (n == n_steps) break;
        z = eval_f2(p, z);
    }
    return tr;
}

std::vector<cplx> BoundaryCurve::points() const {
    std::vector<cplx> out;
    out.reserve(nodes.size());
    for (const auto& nd : nodes) out.push_back(nd.w);
    return out;
}

CurveOutcome boundary_curve(const OrbitTrace& trace, double theta, LimitCenter center,
                            const CurveOptions& opts) {
    if (trace.trap_entry) return {std::nullopt, CurveFail::trap_entry};
    if (trace.points.size() < 2000) return {std::nullopt, CurveFail::too_short};

    const double th = theta;
    BoundaryCurve c;
    c.center = center;
    c.nodes.reserve(trace.points.size());
    c.r_min = std::numeric_limits<double>::infinity();
    c.r_max = 0.0;
    for (std::size_t n = 0; n < trace.points.size(); ++n) {
        const SpherePoint& z = trace.points[n];
        // Chart coordinate; guard against leaving the annulus before dividing.
        double num = (center == LimitCenter::at_zero) ? std::abs(z.u) : std::abs(z.v);
        double den = (center == LimitCenter::at_zero) ? std::abs(z.v) : std::abs(z.u);
        if (num > opts.annulus_max * den || den * opts.annulus_min > num)
            return {std::nullopt, CurveFail::not_in_annulus};
        cplx w = (center == LimitCenter::at_zero) ? z.u / z.v : z.v / z.u;
        double r = std::abs(w);
        c.r_min = std::min(c.r_min, r);
        c.r_max = std::max(c.r_max, r);
        double a = std::fmod(double(n) * th, 1.0);
        c.nodes.push_back({n, a, w});
    }
    std::sort(c.nodes.begin(), c.nodes.end(),
              [](const BoundaryCurve::Node& a, const BoundaryCurve::Node& b) {
                  return a.angle < b.angle;
              });

    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        cplx a = c.nodes[i].w, b = c.nodes[(i + 1) % c.nodes.size()].w;
        c.max_gap = std::max(c.max_gap, std::abs(a - b));
    }

    std::vector<cplx> pts = c.points();
    c.winding = winding_number(pts);
    if (c.winding != 1) return {std::nullopt, CurveFail::bad_winding};
    if (opts.run_simplicity && !polyline_simple(pts))
        return {std::nullopt, CurveFail::self_intersects};
    if (c.max_gap > opts.max_gap_ratio * c.r_max)
        return {std::nullopt, CurveFail::gap_spike};
    return {std::move(c), CurveFail::none};
}

double hausdorff(const BoundaryCurve& a, const BoundaryCurve& b) {
    if (a.center != b.center)
        throw std::invalid_argument("hausdorff: curves must share a center");
    return hausdorff_points(a.points(), b.points());
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::ExteriorType: return "ExteriorType";
        case Verdict::InteriorType: return "InteriorType";
        case Verdict::OnGamma: return "OnGamma";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "?";
}

namespace {

CritEvidence assess_critical_point(const MapParams& p, cplx c, LimitCenter boundary_center,
                                   const std::vector<TrapDisk>& traps,
                                   const ClassifyOptions& opts) {
    CritEvidence ev;
    OrbitTrace tr = orbit(p, SpherePoint::affine(c), opts.orbit_n, traps);
    if (tr.trap_entry) {
        ev.trap_entry = true;
        ev.hit = *tr.trap_entry;
        return ev;
    }
    CurveOutcome out = boundary_curve(tr, p.theta.value(), boundary_center, opts.curve);
    ev.curve_ok = out.ok();
    ev.curve_fail = out.fail;
    if (opts.keep_curves && out.curve) ev.curve = std::move(out.curve);
    return ev;
}

}  // namespace

Classification classify_parameter(const MapParams& p, const ClassifyOptions& opts) {
    Classification cl;
    try {
        auto lin0 = solve_linearizer(taylor_f2(p, LimitCenter::at_zero, opts.series_order),
                                     opts.series_order);
        auto lin_inf = solve_linearizer(taylor_f2(p, LimitCenter::at_infinity, opts.series_order),
                                        opts.series_order);
        cl.trap0 = trap_disk(lin0, opts.trap_fraction);
        cl.trap_inf = trap_disk(lin_inf, opts.trap_fraction);
        cl.traps_ok = true;
    } catch (const std::exception& e) {
        cl.trap_failure = e.what();
        cl.verdict = Verdict::Undetermined;
        return cl;
    }

    std::vector<TrapDisk> traps{cl.trap0, cl.trap_inf};
    CriticalPair cp = critical_points(p);
    cl.c1 = assess_critical_point(p, cp.c1, LimitCenter::at_zero, traps, opts);
    cl.c2 = assess_critical_point(p, cp.c2, LimitCenter::at_infinity, traps, opts);

    // Exactly one of the three configurations holds for every alpha: at least
    // one critical point is on its boundary, c1 only ever on the 0-side and
    // c2 only on the infinity side. "Not on" is any failed on-criterion: a
    // trap entry (the orbit landed strictly inside the Fatou set) or a trace
    // whose closure is not a Jordan boundary loop. Only the configuration the
    // theorem excludes - no positive evidence on either side - stays open.
    bool on1 = cl.c1.on_boundary(), on2 = cl.c2.on_boundary();
    if (on1 && on2)
        cl.verdict = Verdict::OnGamma;
    else if (on1)
        cl.verdict = Verdict::ExteriorType;
    else if (on2)
        cl.verdict = Verdict::InteriorType;
    else
        cl.verdict = Verdict::Undetermined;
    return cl;
}

}  // namespace siegel
