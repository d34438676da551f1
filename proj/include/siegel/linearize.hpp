#pragma once

#include <stdexcept>
#include <vector>

#include "siegel/dynamics.hpp"

namespace siegel {

// Truncated power series of f_alpha^2 at one of its Siegel fixed points, in
// the local chart (w = z at 0, w = 1/z at infinity). c[n] is the coefficient
// of w^n; c[0] = 0 and c[1] = lambda.
struct TaylorSeries {
    LimitCenter center;
    cplx lambda;
    std::vector<cplx> c;

    int order() const { return int(c.size()) - 1; }
};

// Raised when some small divisor lambda^n - lambda falls below 1e-12 for
// n <= order, i.e. the rotation number is indistinguishable from a rational
// at this truncation order.
struct SmallDivisorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated linearizer h(zeta) = zeta + sum_{n>=2} b[n] zeta^n solving
// h(lambda zeta) = F(h(zeta)) for the local series F, normalized by b1 = 1.
// radius_estimate approximates 1/limsup |b_n|^{1/n}.
struct Linearizer {
    LimitCenter center;
    cplx lambda;
    std::vector<cplx> b;  // b[0] = 0, b[1] = 1
    double radius_estimate = 0.0;
    bool radius_fit_ok = false;
    int usable_coefficients = 0;

    int order() const { return int(b.size()) - 1; }
    cplx eval(cplx zeta) const;
};

// Chart disk |w| <= radius about a Siegel center, certified (numerically) to
// lie inside the Siegel disk; orbit entry is the Fatou-membership witness.
struct TrapDisk {
    LimitCenter center;
    double radius = 0.0;
};

// Series expansion of f^2 in the chart of the given center, by power-series
// division of the two polynomial factors of the map.
TaylorSeries taylor_f2(const MapParams& p, LimitCenter center, int order);

// f^2 in chart coordinates, evaluated directly from the rational expression
// (no truncation); finite as long as w stays inside the Siegel disk.
cplx chart_f2(const MapParams& p, LimitCenter center, cplx w);

// Horner evaluation of a coefficient array c[0..N] at w.
cplx series_eval(const std::vector<cplx>& c, cplx w);

// Solve the linearization equation order by order:
//   (lambda^n - lambda) b_n = [F(h)]_n restricted to the k>=2 terms.
// The conformal-radius estimate fits log|b_n| over the top third of indices.
Linearizer solve_linearizer(const TaylorSeries& ts, int order);

// sup |F(h(zeta)) - h(lambda zeta)| over |zeta| = rho, with F the exact chart
// map (not the truncated series).
double linearizer_residual(const MapParams& p, const Linearizer& lin, double rho,
                           int n_angles = 256);

// min_phi |h(fraction * radius_estimate * e^{i phi})| over 256 angles; the
// chart disk of that radius is the trap. Requires 0 < fraction <= 0.6 and a
// successful radius fit.
TrapDisk trap_disk(const Linearizer& lin, double fraction);

// True if the chart value of z (in the trap's chart) lies inside the trap.
bool in_trap(const TrapDisk& trap, const SpherePoint& z);

}  // namespace siegel
