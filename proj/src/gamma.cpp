#include "siegel/gamma.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/geometry.hpp"
#include "siegel/parallel.hpp"

namespace siegel {

namespace {

Verdict classify_at(const RotationNumber& theta, cplx alpha, const ClassifyOptions& opts,
                    int& calls) {
    ++calls;
    return classify_parameter(MapParams(theta, alpha), opts).verdict;
}

}  // namespace

RayResult switchover_on_ray(const RotationNumber& theta, double phi, const RayOptions& opts) {
    RayResult r;
    r.phi = phi;
    if (!(opts.t_lo > 0.0 && opts.t_lo < opts.t_hi)) {
        r.fail_reason = "invalid bracket";
        return r;
    }
    cplx dir = std::polar(1.0, phi);

    // The curve is decorated at fine scales (capture pockets, small Mandelbrot
    // copies), so a ray may cross it several times and near-curve verdicts can
    // stay ambiguous over a band. The two radii that are well defined and
    // exactly equivariant under alpha -> e^{-6 pi i theta}/alpha are the
    // outermost InteriorType radius and the innermost ExteriorType radius;
    // the returned point is their geometric mean. All probed radii live on a
    // reciprocal geometric grid, so with a reciprocal bracket (t_lo = 1/t_hi)
    // the conjugate ray at -6 pi theta - phi probes exactly the reciprocal
    // radii and the trace maps onto itself ray by ray.
    const int K = std::max(opts.scan_points, 8);
    std::vector<double> grid(static_cast<std::size_t>(K));
    std::vector<Verdict> scan(static_cast<std::size_t>(K));
    double ratio = opts.t_hi / opts.t_lo;
    for (int k = 0; k < K; ++k) {
        grid[k] = opts.t_lo * std::pow(ratio, double(k) / double(K - 1));
        scan[k] = classify_at(theta, grid[k] * dir, opts.classify, r.classify_calls);
    }
    r.lo_verdict = scan.front();
    r.hi_verdict = scan.back();
    if (r.lo_verdict != Verdict::InteriorType) {
        r.fail_reason = "inner bracket endpoint is not InteriorType";
        return r;
    }
    if (r.hi_verdict != Verdict::ExteriorType) {
        r.fail_reason = "outer bracket endpoint is not ExteriorType";
        return r;
    }

    int last_int = 0, first_ext = K - 1;
    for (int k = 0; k < K; ++k) {
        if (scan[k] == Verdict::InteriorType) last_int = k;
        if (scan[k] == Verdict::ExteriorType && first_ext == K - 1) first_ext = k;
    }

    // Nudged reclassification for Undetermined midpoints; a persistently
    // polluted edge is flagged but refined as non-Interior / non-Exterior.
    auto classify_mid = [&](double lo, double hi, double mid) {
        Verdict v = classify_at(theta, mid * dir, opts.classify, r.classify_calls);
        int tries = 0;
        while (v == Verdict::Undetermined && tries < opts.undetermined_retries) {
            ++tries;
            double stretch = std::pow(hi / lo, double(tries) / 16.0 * (tries % 2 == 1 ? 1.0 : -1.0));
            double t = std::clamp(mid * stretch, std::nextafter(lo, hi), std::nextafter(hi, lo));
            v = classify_at(theta, t * dir, opts.classify, r.classify_calls);
        }
        if (v == Verdict::Undetermined) r.undetermined_polluted = true;
        return v;
    };

    // sup of the InteriorType radii, within its grid cell.
    double lo = grid[last_int];
    double hi = last_int + 1 < K ? grid[last_int + 1] : grid[last_int];
    while (hi - lo > opts.tol) {
        double mid = std::sqrt(lo * hi);
        (classify_mid(lo, hi, mid) == Verdict::InteriorType ? lo : hi) = mid;
    }
    double t_int = std::sqrt(lo * hi);

    // inf of the ExteriorType radii.
    hi = grid[first_ext];
    lo = first_ext > 0 ? grid[first_ext - 1] : grid[first_ext];
    while (hi - lo > opts.tol) {
        double mid = std::sqrt(lo * hi);
        (classify_mid(lo, hi, mid) == Verdict::ExteriorType ? hi : lo) = mid;
    }
    double t_ext = std::sqrt(lo * hi);

    r.ok = true;
    r.band_lo = std::min(t_int, t_ext);
    r.band_hi = std::max(t_int, t_ext);
    r.t_on = std::sqrt(t_int * t_ext);
    r.width = std::max(r.band_hi - r.band_lo, opts.tol);
    r.alpha = r.t_on * dir;
    return r;
}

std::vector<cplx> GammaCurve::points() const {
    std::vector<cplx> out;
    out.reserve(records.size());
    for (const auto& rec : records) out.push_back(rec.alpha);
    return out;
}

double symmetric_fan_offset(const RotationNumber& theta) {
    double c = std::fmod(-3.0 * theta.value(), 1.0);
    if (c < 0.0) c += 1.0;
    return M_PI * c;
}

GammaCurve trace_gamma(const RotationNumber& theta, const TraceOptions& opts) {
    if (opts.rays < 8) throw std::invalid_argument("trace_gamma: at least 8 rays required");
    GammaCurve curve{theta, {}, {}, {}, 0.0, 0};

    const double phi0 = symmetric_fan_offset(theta);
    std::vector<RayResult> rays(std::size_t(opts.rays));
    std::vector<AngleResult> angles(std::size_t(opts.rays));
    parallel_for(std::size_t(opts.rays), opts.threads, [&](std::size_t j) {
        double phi = phi0 + 2.0 * M_PI * double(j) / double(opts.rays);
        RayResult rr = switchover_on_ray(theta, phi, opts.ray);
        if (rr.ok) {
            MapParams p(theta, rr.alpha);
            AngleResult ar = measure_angle(p, opts.ray.classify);
            // The mid-band point may sit among decorations where the critical
            // values stray off the shadow curves; points just past the
            // exterior band edge have c1 genuinely on the boundary and tend
            // to measure cleanly.
            for (double factor : {1.0 + opts.ray.tol, 1.0 + 8.0 * opts.ray.tol}) {
                if (ar.ok) break;
                ar = measure_angle(p.with_alpha(rr.band_hi * factor * std::polar(1.0, phi)),
                                   opts.ray.classify);
            }
            angles[j] = ar;
        }
        rays[j] = std::move(rr);
    });

    for (int j = 0; j < opts.rays; ++j) {
        if (!rays[j].ok) {
            curve.gaps.push_back(rays[j]);
            continue;
        }
        GammaRecord rec;
        rec.phi = rays[j].phi;
        rec.alpha = rays[j].alpha;
        rec.width = rays[j].width;
        rec.band_lo = rays[j].band_lo;
        rec.band_hi = rays[j].band_hi;
        rec.angle_ok = angles[j].ok;
        if (angles[j].ok) {
            rec.A = angles[j].m.A;
            rec.A_tilde = angles[j].m.A_tilde;
            rec.match_error = angles[j].m.match_error;
        }
        curve.records.push_back(rec);
    }

    // Per-edge monotonicity of A along the traced order, over the cyclic
    // subsequence of records whose angle measurement succeeded.
    std::vector<std::size_t> measured;
    for (std::size_t i = 0; i < curve.records.size(); ++i)
        if (curve.records[i].angle_ok) measured.push_back(i);
    const std::size_t m = measured.size();
    if (m >= 3) {
        std::vector<double> inc(m);
        int plus = 0, minus = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double d = curve.records[measured[(i + 1) % m]].A - curve.records[measured[i]].A;
            d = std::fmod(d, 2.0 * M_PI);
            if (d > M_PI) d -= 2.0 * M_PI;
            if (d < -M_PI) d += 2.0 * M_PI;
            inc[i] = d;
            (d >= 0 ? plus : minus)++;
        }
        curve.orientation_sign = plus >= minus ? 1 : -1;
        curve.edge_monotone.assign(curve.records.size(), true);
        int good = 0;
        for (std::size_t i = 0; i < m; ++i) {
            bool ok = (inc[i] == 0.0) || ((inc[i] > 0) == (curve.orientation_sign > 0));
            curve.edge_monotone[measured[i]] = ok;
            good += ok;
        }
        curve.monotone_fraction = double(good) / double(m);
    }
    return curve;
}

GammaReport verify_gamma(const GammaCurve& curve, const VerifyOptions& opts) {
    if (curve.has_gaps()) throw std::invalid_argument("verify_gamma: curve has gaps");
    if (curve.records.size() < 8) throw std::invalid_argument("verify_gamma: too few points");

    GammaReport rep;
    rep.monotone_fraction = curve.monotone_fraction;

    std::vector<cplx> pts = curve.points();
    rep.winding = winding_number(pts);
    rep.winding_ok = rep.winding == 1 || rep.winding == -1;

    cplx l3 = std::polar(1.0, 6.0 * M_PI * curve.theta.value());
    std::vector<cplx> iota_pts;
    iota_pts.reserve(pts.size());
    for (cplx a : pts) iota_pts.push_back(1.0 / (l3 * a));
    rep.iota_hausdorff = hausdorff_polylines(pts, iota_pts);
    rep.iota_ok = rep.iota_hausdorff < opts.iota_hausdorff_max;

    const int n_probe = std::min<int>(opts.probe_rays, int(curve.records.size()));
    rep.probes.resize(std::size_t(n_probe));
    parallel_for(std::size_t(n_probe), opts.threads, [&](std::size_t k) {
        const GammaRecord& rec = curve.records[k * curve.records.size() / std::size_t(n_probe)];
        ProbeCheck& pc = rep.probes[k];
        pc.phi = rec.phi;
        pc.alpha_on = rec.alpha;
        int calls = 0;
        cplx dir = std::polar(1.0, rec.phi);
        // Scan outward (resp. inward) from the band edges for the first
        // decisive verdict; near-curve decorations (capture pockets, small
        // Mandelbrot copies) can keep verdicts ambiguous for a few percent.
        double t_out = (rec.band_hi > 0 ? rec.band_hi : std::abs(rec.alpha));
        double t_in = (rec.band_lo > 0 ? rec.band_lo : std::abs(rec.alpha));
        pc.outer = Verdict::Undetermined;
        pc.inner = Verdict::Undetermined;
        for (double off = opts.probe_offset; off <= 0.33; off *= 2.0) {
            if (pc.outer == Verdict::Undetermined || pc.outer == Verdict::OnGamma)
                pc.outer = classify_at(curve.theta, t_out * (1.0 + off) * dir,
                                       opts.ray.classify, calls);
            if (pc.inner == Verdict::Undetermined || pc.inner == Verdict::OnGamma)
                pc.inner = classify_at(curve.theta, t_in * (1.0 - off) * dir,
                                       opts.ray.classify, calls);
        }
        pc.ok = pc.outer == Verdict::ExteriorType && pc.inner == Verdict::InteriorType;
        if (!pc.ok) {
            // Rescan the full original bracket in 8 subintervals and report
            // every switchover; multiple crossings of this ray show up here.
            const int parts = 8;
            std::vector<Verdict> vs(parts + 1);
            for (int i = 0; i <= parts; ++i) {
                double ti = opts.ray.t_lo + (opts.ray.t_hi - opts.ray.t_lo) * double(i) / parts;
                vs[i] = classify_at(curve.theta, ti * dir, opts.ray.classify, calls);
            }
            for (int i = 0; i < parts; ++i) {
                if (vs[i] != vs[i + 1]) {
                    double ta = opts.ray.t_lo + (opts.ray.t_hi - opts.ray.t_lo) * double(i) / parts;
                    double tb = opts.ray.t_lo + (opts.ray.t_hi - opts.ray.t_lo) * double(i + 1) / parts;
                    pc.rescan_brackets.emplace_back(ta, tb);
                }
            }
        }
    });
    rep.probes_ok = std::all_of(rep.probes.begin(), rep.probes.end(),
                                [](const ProbeCheck& pc) { return pc.ok; });
    return rep;
}

}  // namespace siegel
