#include "siegel/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace siegel {

namespace {

cplx unit_from_angle_dd(std::pair<double, double> theta_dd) {
    // e^{2 pi i (hi + lo)} with a first-order correction in lo; keeps the
    // systematic phase error of lambda at O(1e-17) instead of O(lo).
    double hi = theta_dd.first, lo = theta_dd.second;
    double c = std::cos(2.0 * M_PI * hi), s = std::sin(2.0 * M_PI * hi);
    double d = 2.0 * M_PI * lo;
    return {c - s * d, s + c * d};
}

}  // namespace

MapParams::MapParams(RotationNumber th, cplx a) : theta(std::move(th)), alpha(a) {
    lambda = unit_from_angle_dd(theta.value_dd());
    if (alpha == cplx(0.0, 0.0)) throw std::invalid_argument("map params: alpha must be nonzero");
    if (std::abs(std::abs(lambda) - 1.0) >= 1e-14 || lambda == cplx(1.0, 0.0))
        throw std::invalid_argument("map params: lambda must be on the unit circle, != 1");
}

SpherePoint eval_f(const MapParams& p, const SpherePoint& z) {
    cplx u2 = p.alpha * z.v * (z.v + p.lambda * z.u);
    cplx v2 = z.u * (z.v + z.u);
    return normalized(u2, v2);
}

SpherePoint eval_f2(const MapParams& p, const SpherePoint& z) {
    cplx A = z.u * (z.u + z.v);
    cplx B = z.v * (z.v + p.lambda * z.u);
    cplx u2 = A * (A + p.alpha * p.lambda * B);
    cplx v2 = B * (A + p.alpha * B);
    if (u2 == cplx(0.0, 0.0) && v2 == cplx(0.0, 0.0)) {
        // Rounding collapsed both factors; compose the one-step map instead.
        return eval_f(p, eval_f(p, z));
    }
    return normalized(u2, v2);
}

CriticalPair critical_points(cplx lambda) {
    cplx s = std::sqrt(cplx(1.0, 0.0) - lambda);
    if (std::abs(s.real()) < 1e-14) {
        if (s.imag() < 0.0) s = -s;
    } else if (s.real() < 0.0) {
        s = -s;
    }
    return {-1.0 / (1.0 + s), -1.0 / (1.0 - s)};
}

CriticalPair critical_points(const MapParams& p) { return critical_points(p.lambda); }

SpherePoint tau(cplx lambda, const SpherePoint& z) {
    return normalized(z.v, lambda * z.u);
}

cplx tau(cplx lambda, cplx z) { return 1.0 / (lambda * z); }

MapParams symmetric_param(const MapParams& p) {
    cplx l3 = p.lambda * p.lambda * p.lambda;
    return p.with_alpha(1.0 / (l3 * p.alpha));
}

SpherePoint limit_map(LimitCenter which, cplx lambda, const SpherePoint& z) {
    cplx A = z.u * (z.u + z.v);
    cplx B = z.v * (z.v + lambda * z.u);
    if (which == LimitCenter::at_infinity) return normalized(lambda * A, B);
    return normalized(A, B);
}

LimitDeviation limit_convergence_check(const RotationNumber& theta, LimitCenter which,
                                       double alpha_magnitude,
                                       const std::vector<SpherePoint>& samples) {
    if (alpha_magnitude <= 0.0)
        throw std::invalid_argument("limit check: alpha magnitude must be positive");
    MapParams p(theta, cplx(alpha_magnitude, 0.0));
    const double margin = 0.1;

    SpherePoint bad1, bad2;
    if (which == LimitCenter::at_infinity) {
        bad1 = SpherePoint::at_infinity();
        bad2 = SpherePoint::affine(-1.0 / p.lambda);
    } else {
        bad1 = SpherePoint::affine(0.0);
        bad2 = SpherePoint::affine(-1.0);
    }

    LimitDeviation out;
    for (const auto& z : samples) {
        if (chordal(z, bad1) < margin || chordal(z, bad2) < margin) {
            ++out.samples_flagged;
            continue;
        }
        SpherePoint a = eval_f2(p, z);
        SpherePoint b = limit_map(which, p.lambda, z);
        out.max_deviation = std::max(out.max_deviation, chordal(a, b));
        ++out.samples_used;
    }
    return out;
}

}  // namespace siegel
