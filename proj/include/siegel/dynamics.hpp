#pragma once

#include <vector>

#include "siegel/rotation.hpp"
#include "siegel/sphere.hpp"

namespace siegel {

// The quadratic rational family  f_alpha(z) = alpha (1 + lambda z) / (z + z^2)
// with lambda = e^{2 pi i theta}. Every member has a 2-cycle {0, infinity} of
// Siegel points: f swaps neighborhoods of 0 and infinity and f^2 fixes both
// with multiplier lambda.
struct MapParams {
    RotationNumber theta;
    cplx lambda;  // e^{2 pi i theta}
    cplx alpha;

    MapParams(RotationNumber th, cplx a);

    MapParams with_alpha(cplx a) const { return MapParams(theta, a); }
};

// The two critical points of f_alpha, the roots of lambda z^2 + 2 z + 1.
// They do not depend on alpha. Marking: c1 = -1/(1+s), c2 = -1/(1-s) with
// s = sqrt(1-lambda) on the branch Re s > 0 (Im s > 0 if Re s vanishes).
struct CriticalPair {
    cplx c1;
    cplx c2;
};

enum class LimitCenter { at_zero, at_infinity };

// One application of f in homogeneous coordinates:
//   (u, v) -> (alpha v (v + lambda u), u (v + u)).
SpherePoint eval_f(const MapParams& p, const SpherePoint& z);

// f^2 evaluated directly from its factored rational form
//   f^2(z) = (z+z^2)/(1+lambda z) * (z+z^2+alpha lambda(1+lambda z))/(z+z^2+alpha(1+lambda z)),
// in homogeneous coordinates: with A = u(u+v), B = v(v+lambda u),
//   (u, v) -> (A (A + alpha lambda B), B (A + alpha B)).
SpherePoint eval_f2(const MapParams& p, const SpherePoint& z);

CriticalPair critical_points(const MapParams& p);
CriticalPair critical_points(cplx lambda);

// tau(z) = 1/(lambda z); conjugates f_alpha to f_{alpha'} and swaps c1, c2.
SpherePoint tau(cplx lambda, const SpherePoint& z);
cplx tau(cplx lambda, cplx z);

// alpha' = e^{-6 pi i theta} / alpha = 1 / (lambda^3 alpha); an involution.
MapParams symmetric_param(const MapParams& p);

// Limit of f_alpha^2 as alpha -> infinity (g_inf = lambda(z+z^2)/(1+lambda z))
// or alpha -> 0 (g_0 = (z+z^2)/(1+lambda z)), evaluated projectively.
SpherePoint limit_map(LimitCenter which, cplx lambda, const SpherePoint& z);

struct LimitDeviation {
    double max_deviation = 0.0;  // sup of chordal(f_alpha^2(z), g(z)) over admitted samples
    int samples_used = 0;
    int samples_flagged = 0;  // samples too close to the locus of non-uniformity
};

// Uniform-convergence probe: compares f_alpha^2 against the limit map on the
// given samples, with alpha = alpha_magnitude for the infinity limit and
// alpha = alpha_magnitude for the zero limit. Samples within chordal margin
// 0.1 of the exceptional set ({inf, -1/lambda} resp. {0, -1}) are flagged and
// excluded from the sup.
LimitDeviation limit_convergence_check(const RotationNumber& theta, LimitCenter which,
                                       double alpha_magnitude,
                                       const std::vector<SpherePoint>& samples);

}  // namespace siegel
