#include "siegel/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace siegel {

SpherePoint SpherePoint::affine(cplx z) {
    if (std::isinf(z.real()) || std::isinf(z.imag())) return at_infinity();
    return normalized(z, {1.0, 0.0});
}

SpherePoint normalized(cplx u, cplx v) {
    double m = std::max(std::abs(u), std::abs(v));
    if (m == 0.0) throw std::invalid_argument("sphere point: (0,0) is not projective");
    if (!std::isfinite(m)) throw std::invalid_argument("sphere point: non-finite coordinates");
    int e = std::ilogb(m);
    double s = std::ldexp(1.0, -e - 1);  // m * s in [1/2, 1)
    return SpherePoint{u * s, v * s};
}

double chordal(const SpherePoint& a, const SpherePoint& b) {
    double cross = std::abs(a.u * b.v - b.u * a.v);
    double na = std::sqrt(std::norm(a.u) + std::norm(a.v));
    double nb = std::sqrt(std::norm(b.u) + std::norm(b.v));
    return 2.0 * cross / (na * nb);
}

double chordal(cplx a, cplx b) {
    return chordal(SpherePoint::affine(a), SpherePoint::affine(b));
}

double chordal_to_infinity(cplx a) {
    return chordal(SpherePoint::affine(a), SpherePoint::at_infinity());
}

}  // namespace siegel
