#pragma once

#include <complex>

namespace siegel {

using cplx = std::complex<double>;

// Point of the Riemann sphere in homogeneous coordinates, z = u/v.
// Normalized so that max(|u|,|v|) lies in [1/2, 1]; the scale factor is a
// power of two, so normalization is exact. Orbits of the maps in this
// project pass arbitrarily close to poles, which makes affine iteration
// overflow; all iteration goes through this representation.
struct SpherePoint {
    cplx u{0.0, 0.0};
    cplx v{1.0, 0.0};

    static SpherePoint affine(cplx z);
    static SpherePoint at_infinity() { return SpherePoint{{1.0, 0.0}, {0.0, 0.0}}; }

    bool is_infinity() const { return v == cplx(0.0, 0.0); }
    // Chart value u/v; +/-inf components at the point at infinity.
    cplx value() const { return u / v; }
};

// Rescale (u,v) by an exact power of two so max(|u|,|v|) is in [1/2,1].
SpherePoint normalized(cplx u, cplx v);

// Chordal distance on the sphere, d(z,w) = 2|u_z v_w - u_w v_z| / (|z||w|)
// with |z| = sqrt(|u|^2+|v|^2). Range [0,2]; infinity is a regular point.
double chordal(const SpherePoint& a, const SpherePoint& b);
double chordal(cplx a, cplx b);
double chordal_to_infinity(cplx a);

}  // namespace siegel
