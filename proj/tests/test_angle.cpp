#include <doctest.h>

#include <cmath>

#include "siegel/angle.hpp"

using namespace siegel;

namespace {

MapParams golden_params(cplx alpha) { return MapParams(RotationNumber::golden(), alpha); }

cplx golden_alpha_star() {
    MapParams p = golden_params(1.0);
    CriticalPair cp = critical_points(p);
    cplx f1c2 = (1.0 + p.lambda * cp.c2) / (cp.c2 + cp.c2 * cp.c2);
    return cp.c1 / f1c2;
}

BoundaryCurve unit_circle_curve(double theta, std::size_t n) {
    OrbitTrace tr;
    tr.seed = SpherePoint::affine(cplx(1.0, 0.0));
    for (std::size_t k = 0; k <= n; ++k)
        tr.points.push_back(SpherePoint::affine(std::polar(1.0, 2.0 * M_PI * theta * double(k))));
    return *boundary_curve(tr, theta, LimitCenter::at_zero).curve;
}

}  // namespace

TEST_CASE("locating a target on the synthetic rotation circle") {
    double theta = RotationNumber::golden().value();
    const std::size_t n = 5000;
    BoundaryCurve curve = unit_circle_curve(theta, n);
    CurveMatch m = locate_on_curve(curve, std::polar(1.0, 2.0 * M_PI * 0.3));
    CHECK(std::abs(m.frac - 0.3) < 10.0 / double(n));
    CHECK(m.dist < 2.0 * M_PI / double(n));
    // exact node hit
    CurveMatch at_node = locate_on_curve(curve, std::polar(1.0, 2.0 * M_PI * theta * 7.0));
    CHECK(std::abs(at_node.frac - std::fmod(7.0 * theta, 1.0)) < 1e-9);
    CHECK(at_node.dist < 1e-12);
}

TEST_CASE("angle at the distinguished parameter is zero") {
    MapParams p = golden_params(golden_alpha_star());
    ClassifyOptions opts;
    AngleResult ar = conformal_angle(p, opts);
    REQUIRE(ar.ok);
    double a = std::min(ar.m.A, 2.0 * M_PI - ar.m.A);
    CHECK(a < 2.0 * M_PI * 10.0 / double(opts.orbit_n));
    CHECK(angle_defect(ar.m, p.theta.value()) < 5e-3);
    CHECK(ar.m.match_error < 10.0 * ar.m.max_gap);
}

TEST_CASE("angle relation A = A~ + 2 pi theta holds near the locus") {
    MapParams p = golden_params(golden_alpha_star() * 1.0005);
    AngleResult ar = measure_angle(p);
    REQUIRE(ar.ok);
    CHECK(angle_defect(ar.m, p.theta.value()) < 5e-3);
}

TEST_CASE("guarded angle refuses off-locus parameters") {
    AngleResult ar = conformal_angle(golden_params(cplx(3.0, 0.0)));
    CHECK(!ar.ok);
    CHECK(ar.fail_reason.find("ExteriorType") != std::string::npos);
}

TEST_CASE("doubling the boundary samples moves A very little") {
    MapParams p = golden_params(golden_alpha_star());
    ClassifyOptions n1, n2;
    n1.orbit_n = 10000;
    n2.orbit_n = 20000;
    AngleResult a1 = measure_angle(p, n1);
    AngleResult a2 = measure_angle(p, n2);
    REQUIRE(a1.ok);
    REQUIRE(a2.ok);
    double d = std::fmod(std::abs(a1.m.A - a2.m.A), 2.0 * M_PI);
    d = std::min(d, 2.0 * M_PI - d);
    CHECK(d < 4.0 * M_PI / double(n1.orbit_n));
}

TEST_CASE("re-seeding the boundary orbit only shifts the angle origin") {
    // Rotation-circle model: re-seed at z_k and subtract the 2 pi k theta
    // offset; the located angle must be unchanged.
    double theta = RotationNumber::golden().value();
    const std::size_t n = 4000, k = 137;
    BoundaryCurve base = unit_circle_curve(theta, n);
    cplx target = std::polar(1.0, 2.0 * M_PI * 0.42);
    double A_base = locate_on_curve(base, target).frac;

    OrbitTrace shifted;
    shifted.seed = SpherePoint::affine(std::polar(1.0, 2.0 * M_PI * theta * double(k)));
    for (std::size_t j = 0; j <= n; ++j)
        shifted.points.push_back(
            SpherePoint::affine(std::polar(1.0, 2.0 * M_PI * theta * double(k + j))));
    BoundaryCurve re = *boundary_curve(shifted, theta, LimitCenter::at_zero).curve;
    double A_shift = locate_on_curve(re, target).frac;
    double recovered = std::fmod(A_shift + theta * double(k), 1.0);
    double d = std::abs(recovered - A_base);
    d = std::min(d, 1.0 - d);
    CHECK(d < 10.0 / double(n));
}

TEST_CASE("the nearest match is angle-local") {
    MapParams p = golden_params(golden_alpha_star());
    ClassifyOptions opts;
    AngleResult ar = measure_angle(p, opts);
    REQUIRE(ar.ok);
    double d = std::abs(ar.m.nearest_frac - ar.m.A / (2.0 * M_PI));
    d = std::min(d, 1.0 - d);
    CHECK(d < 2.0 / double(opts.orbit_n));
}
