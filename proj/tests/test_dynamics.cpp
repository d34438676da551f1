#include <doctest.h>

#include <cmath>
#include <random>

#include "siegel/dynamics.hpp"

using namespace siegel;

namespace {

MapParams golden_params(cplx alpha) { return MapParams(RotationNumber::golden(), alpha); }

// Durand-Kerner on lambda z^2 + 2 z + 1, independent of the closed form used
// by critical_points.
std::pair<cplx, cplx> crit_roots_oracle(cplx lambda) {
    cplx r1(0.4, 0.9), r2(-1.3, 0.2);
    for (int it = 0; it < 200; ++it) {
        cplx p1 = (lambda * r1 * r1 + 2.0 * r1 + 1.0) / (lambda * (r1 - r2));
        cplx p2 = (lambda * r2 * r2 + 2.0 * r2 + 1.0) / (lambda * (r2 - r1));
        r1 -= p1;
        r2 -= p2;
    }
    return {r1, r2};
}

}  // namespace

TEST_CASE("map params validate their inputs") {
    CHECK_THROWS_AS(golden_params(cplx(0.0, 0.0)), std::invalid_argument);
    CHECK(std::abs(std::abs(golden_params(1.0).lambda) - 1.0) < 1e-15);
}

TEST_CASE("poles and zeros of f in the projective chart") {
    MapParams p = golden_params(cplx(0.7, -0.3));
    CHECK(eval_f(p, SpherePoint::affine(0.0)).is_infinity());
    CHECK(eval_f(p, SpherePoint::affine(-1.0)).is_infinity());
    CHECK(std::abs(eval_f(p, SpherePoint::at_infinity()).value()) < 1e-15);
    CHECK(std::abs(eval_f(p, SpherePoint::affine(-1.0 / p.lambda)).value()) < 1e-15);
}

TEST_CASE("0 and infinity form a 2-cycle of f, fixed by f^2") {
    MapParams p = golden_params(cplx(1.3, 0.4));
    CHECK(std::abs(eval_f2(p, SpherePoint::affine(0.0)).value()) < 1e-15);
    CHECK(eval_f2(p, SpherePoint::at_infinity()).is_infinity());
}

TEST_CASE("multiplier of the cycle is lambda") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        cplx alpha = std::polar(0.3 + 3.0 * u(rng), 2.0 * M_PI * u(rng));
        MapParams p = golden_params(alpha);
        const double h = 1e-4;
        cplx fp = eval_f2(p, SpherePoint::affine(cplx(h, 0))).value();
        cplx fm = eval_f2(p, SpherePoint::affine(cplx(-h, 0))).value();
        CHECK(std::abs((fp - fm) / (2.0 * h) - p.lambda) < 1e-6);
    }
}

TEST_CASE("direct f^2 equals the composition at 1000 random points") {
    MapParams p = golden_params(cplx(0.23, 1.1));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        cplx z = std::polar(std::exp(4.0 * u(rng) - 2.0), 2.0 * M_PI * u(rng));
        SpherePoint sp = SpherePoint::affine(z);
        worst = std::max(worst, chordal(eval_f2(p, sp), eval_f(p, eval_f(p, sp))));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("projective and affine evaluation agree at finite points") {
    MapParams p = golden_params(cplx(-0.9, 0.35));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        cplx z = std::polar(std::exp(2.0 * u(rng) - 1.0), 2.0 * M_PI * u(rng));
        cplx affine = p.alpha * (1.0 + p.lambda * z) / (z + z * z);
        if (!std::isfinite(std::abs(affine))) continue;
        CHECK(chordal(eval_f(p, SpherePoint::affine(z)), SpherePoint::affine(affine)) < 1e-13);
    }
}

TEST_CASE("critical points: Vieta identities, marking, independence of alpha") {
    int idx = 0;
    for (const RotationNumber& th :
         {RotationNumber::golden(), RotationNumber({20}, {1}), RotationNumber({}, {2}),
          RotationNumber({1, 1, 2}, {3}), RotationNumber({}, {1, 2})}) {
        MapParams p(th, cplx(0.5 + 0.25 * idx++, 0.4));
        CriticalPair cp = critical_points(p);
        CHECK(std::abs(cp.c1 + cp.c2 + 2.0 / p.lambda) < 1e-12);
        CHECK(std::abs(cp.c1 * cp.c2 - 1.0 / p.lambda) < 1e-12);
        CHECK(std::abs(tau(p.lambda, cp.c1) - cp.c2) < 1e-12);
        // residual of the f' numerator polynomial
        for (cplx c : {cp.c1, cp.c2})
            CHECK(std::abs(p.lambda * c * c + 2.0 * c + 1.0) < 1e-12);
        // marking branch
        cplx s = std::sqrt(cplx(1.0, 0.0) - p.lambda);
        if (s.real() < 0) s = -s;
        CHECK(std::abs(cp.c1 + 1.0 / (1.0 + s)) < 1e-12);
        // independent root oracle finds the same set
        auto [r1, r2] = crit_roots_oracle(p.lambda);
        double match = std::min(std::abs(r1 - cp.c1) + std::abs(r2 - cp.c2),
                                std::abs(r1 - cp.c2) + std::abs(r2 - cp.c1));
        CHECK(match < 1e-10);
    }
}

TEST_CASE("critical set of f^2 has 6 points with vanishing derivative") {
    MapParams p = golden_params(cplx(1.7, -0.6));
    CriticalPair cp = critical_points(p);
    auto fprime = [&](cplx z) {
        return -p.alpha * (p.lambda * z * z + 2.0 * z + 1.0) / ((z + z * z) * (z + z * z));
    };
    std::vector<cplx> crit{cp.c1, cp.c2};
    // preimages f(z) = c solve  c z^2 + (c - alpha lambda) z - alpha = 0
    for (cplx c : {cp.c1, cp.c2}) {
        cplx A = c, B = c - p.alpha * p.lambda, C = -p.alpha;
        cplx disc = std::sqrt(B * B - 4.0 * A * C);
        crit.push_back((-B + disc) / (2.0 * A));
        crit.push_back((-B - disc) / (2.0 * A));
    }
    REQUIRE(crit.size() == 6);
    for (cplx z : crit) {
        cplx w = eval_f(p, SpherePoint::affine(z)).value();
        CHECK(std::abs(fprime(w) * fprime(z)) < 1e-6);  // chain rule on f^2
    }
    // each preimage actually maps back to its critical point
    for (int i = 2; i < 6; ++i) {
        cplx target = i < 4 ? cp.c1 : cp.c2;
        CHECK(chordal(eval_f(p, SpherePoint::affine(crit[i])), SpherePoint::affine(target)) < 1e-10);
    }
}

TEST_CASE("degree two: random regular values have two preimages") {
    MapParams p = golden_params(cplx(0.8, 0.1));
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        cplx w = std::polar(std::exp(3.0 * u(rng) - 1.5), 2.0 * M_PI * u(rng));
        // f(z) = w  <=>  w z^2 + (w - alpha lambda) z - alpha = 0
        cplx A = w, B = w - p.alpha * p.lambda, C = -p.alpha;
        cplx disc = std::sqrt(B * B - 4.0 * A * C);
        cplx z1 = (-B + disc) / (2.0 * A), z2 = (-B - disc) / (2.0 * A);
        CHECK(std::abs(z1 - z2) > 1e-12);  // regular value
        for (cplx z : {z1, z2})
            CHECK(chordal(eval_f(p, SpherePoint::affine(z)), SpherePoint::affine(w)) < 1e-10);
    }
}

TEST_CASE("limit maps fix the Siegel centers with the right multipliers") {
    cplx lambda = golden_params(1.0).lambda;
    CHECK(std::abs(limit_map(LimitCenter::at_infinity, lambda, SpherePoint::affine(0.0)).value()) <
          1e-15);
    CHECK(std::abs(limit_map(LimitCenter::at_zero, lambda, SpherePoint::affine(0.0)).value()) <
          1e-15);
    const double h = 1e-6;
    cplx dg_inf = (limit_map(LimitCenter::at_infinity, lambda, SpherePoint::affine(cplx(h, 0))).value() -
                   limit_map(LimitCenter::at_infinity, lambda, SpherePoint::affine(cplx(-h, 0))).value()) /
                  (2.0 * h);
    CHECK(std::abs(dg_inf - lambda) < 1e-8);
    cplx dg_0 = (limit_map(LimitCenter::at_zero, lambda, SpherePoint::affine(cplx(h, 0))).value() -
                 limit_map(LimitCenter::at_zero, lambda, SpherePoint::affine(cplx(-h, 0))).value()) /
                (2.0 * h);
    CHECK(std::abs(dg_0 - 1.0) < 1e-8);
}

TEST_CASE("tau conjugates g_0 to g_inf") {
    cplx lambda = golden_params(1.0).lambda;
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        cplx z = std::polar(std::exp(3.0 * u(rng) - 1.5), 2.0 * M_PI * u(rng));
        SpherePoint sp = SpherePoint::affine(z);
        SpherePoint lhs = tau(lambda, limit_map(LimitCenter::at_zero, lambda, sp));
        SpherePoint rhs = limit_map(LimitCenter::at_infinity, lambda, tau(lambda, sp));
        worst = std::max(worst, chordal(lhs, rhs));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("parameter symmetry is an involution and a conjugacy") {
    MapParams p = golden_params(cplx(1.0, 0.0));
    cplx l3 = p.lambda * p.lambda * p.lambda;
    CHECK(std::abs(symmetric_param(p).alpha - 1.0 / l3) < 1e-14);

    MapParams q = golden_params(cplx(-0.37, 0.8));
    CHECK(std::abs(symmetric_param(symmetric_param(q)).alpha - q.alpha) < 1e-14);

    MapParams qs = symmetric_param(q);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        cplx z = std::polar(std::exp(4.0 * u(rng) - 2.0), 2.0 * M_PI * u(rng));
        SpherePoint sp = SpherePoint::affine(z);
        worst = std::max(worst, chordal(tau(q.lambda, eval_f(q, sp)), eval_f(qs, tau(q.lambda, sp))));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("f^2 converges to the limit maps as alpha degenerates") {
    RotationNumber th = RotationNumber::golden();
    std::vector<SpherePoint> circle;
    for (int k = 0; k < 50; ++k)
        circle.push_back(SpherePoint::affine(std::polar(1.0, 2.0 * M_PI * k / 50.0)));

    auto inf6 = limit_convergence_check(th, LimitCenter::at_infinity, 1e6, circle);
    CHECK(inf6.max_deviation < 1e-4);
    auto inf3 = limit_convergence_check(th, LimitCenter::at_infinity, 1e3, circle);
    CHECK(inf3.max_deviation > inf6.max_deviation);
    auto zero6 = limit_convergence_check(th, LimitCenter::at_zero, 1e-6, circle);
    CHECK(zero6.max_deviation < 1e-4);

    // -1 lies on the unit circle: the zero-limit check must flag it
    std::vector<SpherePoint> with_bad = circle;
    with_bad.push_back(SpherePoint::affine(cplx(-1.0, 0.0)));
    auto flagged = limit_convergence_check(th, LimitCenter::at_zero, 1e-6, with_bad);
    CHECK(flagged.samples_flagged >= 1);
    CHECK(flagged.samples_used + flagged.samples_flagged == int(with_bad.size()));
}

TEST_CASE("sphere normalization and chordal metric basics") {
    CHECK_THROWS_AS(normalized(cplx(0, 0), cplx(0, 0)), std::invalid_argument);
    SpherePoint a = SpherePoint::affine(cplx(1e200, 0));
    CHECK(std::max(std::abs(a.u), std::abs(a.v)) <= 1.0);
    CHECK(std::max(std::abs(a.u), std::abs(a.v)) >= 0.5);
    CHECK(chordal(SpherePoint::affine(0.0), SpherePoint::at_infinity()) == doctest::Approx(2.0));
    // round trip through normalization
    cplx z(0.3, -1.7);
    CHECK(std::abs(SpherePoint::affine(z).value() - z) < 1e-14 * std::abs(z));
}
