#include <doctest.h>

#include <cmath>

#include "siegel/gamma.hpp"
#include "siegel/geometry.hpp"

using namespace siegel;

namespace {

cplx golden_alpha_star() {
    MapParams p(RotationNumber::golden(), 1.0);
    CriticalPair cp = critical_points(p);
    cplx f1c2 = (1.0 + p.lambda * cp.c2) / (cp.c2 + cp.c2 * cp.c2);
    return cp.c1 / f1c2;
}

// One 16-ray trace shared by the test cases below.
const GammaCurve& shared_trace() {
    static GammaCurve curve = [] {
        TraceOptions opts;
        opts.rays = 16;
        opts.ray.tol = 1e-3;
        return trace_gamma(RotationNumber::golden(), opts);
    }();
    return curve;
}

}  // namespace

TEST_CASE("all 16 rays bracket and converge with the default bracket") {
    const GammaCurve& curve = shared_trace();
    CHECK(curve.records.size() == 16);
    CHECK(!curve.has_gaps());
    for (const auto& rec : curve.records) {
        CHECK(rec.band_lo <= rec.band_hi);
        CHECK(rec.band_lo > 1.0 / 3.0);
        CHECK(rec.band_hi < 3.0);
    }
}

TEST_CASE("switchover on the distinguished ray brackets the known point") {
    cplx astar = golden_alpha_star();
    RayOptions opts;
    opts.tol = 1e-3;
    RayResult rr = switchover_on_ray(RotationNumber::golden(), std::arg(astar), opts);
    REQUIRE(rr.ok);
    // the exactly-known on-curve radius must be sandwiched by the bracket and
    // the returned point lies within its reported width of it
    CHECK(rr.band_lo - opts.tol <= std::abs(astar));
    CHECK(std::abs(astar) <= rr.band_hi + opts.tol);
    CHECK(std::abs(rr.t_on - std::abs(astar)) <= std::max(10.0 * opts.tol, rr.width));
    CHECK(rr.lo_verdict == Verdict::InteriorType);
    CHECK(rr.hi_verdict == Verdict::ExteriorType);
}

TEST_CASE("conjugate rays return conjugate points") {
    const GammaCurve& curve = shared_trace();
    const auto& recs = curve.records;
    const std::size_t m = recs.size();
    // ray j pairs with ray (m - j) mod m in the symmetric fan
    for (std::size_t j = 0; j < m; ++j) {
        const auto& a = recs[j];
        const auto& b = recs[(m - j) % m];
        CHECK(std::abs(std::abs(a.alpha) * std::abs(b.alpha) - 1.0) <=
              std::max(10.0 * 1e-3, a.width + b.width));
    }
}

TEST_CASE("traced curve passes the global property checks") {
    VerifyOptions vopts;
    GammaReport rep = verify_gamma(shared_trace(), vopts);
    CHECK(rep.winding_ok);
    CHECK((rep.winding == 1 || rep.winding == -1));
    CHECK(rep.iota_ok);
    CHECK(rep.iota_hausdorff < 1e-2);
    CHECK(rep.probes_ok);
    CHECK(rep.pass());
}

TEST_CASE("angles are monotone and cover all octants") {
    const GammaCurve& curve = shared_trace();
    CHECK(curve.monotone_fraction >= 0.95);
    bool octant[8] = {};
    int measured = 0;
    for (const auto& rec : curve.records) {
        if (!rec.angle_ok) continue;
        ++measured;
        octant[int(rec.A / (M_PI / 4.0)) & 7] = true;
    }
    CHECK(measured >= 12);
    for (int k = 0; k < 8; ++k) CHECK(octant[k]);
}

TEST_CASE("the record nearest the distinguished parameter has a near-zero angle") {
    const GammaCurve& curve = shared_trace();
    cplx astar = golden_alpha_star();
    const GammaRecord* best = nullptr;
    for (const auto& rec : curve.records)
        if (!best || std::abs(rec.alpha - astar) < std::abs(best->alpha - astar)) best = &rec;
    REQUIRE(best);
    REQUIRE(best->angle_ok);
    double a = std::min(best->A, 2.0 * M_PI - best->A);
    CHECK(a < 2.0 * M_PI / 16.0 + 5e-3 + best->width);
}

TEST_CASE("a synthetic circle fails verification") {
    GammaCurve fake{RotationNumber::golden(), {}, {}, {}, 1.0, 1};
    for (int k = 0; k < 8; ++k) {
        GammaRecord rec;
        rec.phi = 2.0 * M_PI * k / 8.0;
        rec.alpha = std::polar(1.0, rec.phi);
        rec.band_lo = rec.band_hi = 1.0;
        rec.width = 1e-3;
        rec.angle_ok = true;
        rec.A = rec.phi;
        fake.records.push_back(rec);
    }
    VerifyOptions vopts;
    GammaReport rep = verify_gamma(fake, vopts);
    CHECK(!rep.probes_ok);
    CHECK(!rep.pass());
    // at least one failing probe reports where the verdicts actually switch
    bool reported = false;
    for (const auto& pc : rep.probes)
        if (!pc.ok && !pc.rescan_brackets.empty()) reported = true;
    CHECK(reported);
}

TEST_CASE("reversing orientation flips the winding sign only") {
    std::vector<cplx> pts = shared_trace().points();
    int w = winding_number(pts);
    std::vector<cplx> rev(pts.rbegin(), pts.rend());
    CHECK(winding_number(rev) == -w);
    // the symmetry check is orientation-free
    cplx l3 = std::polar(1.0, 6.0 * M_PI * RotationNumber::golden().value());
    std::vector<cplx> image;
    for (cplx a : pts) image.push_back(1.0 / (l3 * a));
    CHECK(hausdorff_polylines(pts, image) == hausdorff_polylines(rev, image));
}

TEST_CASE("verify_gamma refuses curves with gaps") {
    GammaCurve broken = shared_trace();
    RayResult failed;
    failed.fail_reason = "synthetic gap";
    broken.gaps.push_back(failed);
    CHECK_THROWS_AS(verify_gamma(broken), std::invalid_argument);
}
