#include "siegel/linearize.hpp"

#include <algorithm>
#include <cmath>

namespace siegel {

namespace {

using poly = std::vector<cplx>;  // poly[k] = coefficient of w^k

poly mul(const poly& a, const poly& b) {
    poly r(a.size() + b.size() - 1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

poly add_scaled(const poly& a, cplx s, const poly& b) {
    poly r = a;
    if (b.size() > r.size()) r.resize(b.size(), cplx(0.0, 0.0));
    for (std::size_t j = 0; j < b.size(); ++j) r[j] += s * b[j];
    return r;
}

// Numerator / denominator polynomials of f^2 in the chart of `center`.
// center 0 (w = z):   A = w + w^2,        B = 1 + lambda w,
//                     N = A (A + alpha lambda B), D = B (A + alpha B).
// center inf (w=1/z): A = 1 + w,          B = w (w + lambda),
//                     N = B (A + alpha B), D = A (A + alpha lambda B).
void chart_fraction(const MapParams& p, LimitCenter center, poly& num, poly& den) {
    if (center == LimitCenter::at_zero) {
        poly A{cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(1.0, 0.0)};
        poly B{cplx(1.0, 0.0), p.lambda};
        num = mul(A, add_scaled(A, p.alpha * p.lambda, B));
        den = mul(B, add_scaled(A, p.alpha, B));
    } else {
        poly A{cplx(1.0, 0.0), cplx(1.0, 0.0)};
        poly B{cplx(0.0, 0.0), p.lambda, cplx(1.0, 0.0)};
        num = mul(B, add_scaled(A, p.alpha, B));
        den = mul(A, add_scaled(A, p.alpha * p.lambda, B));
    }
}

cplx eval_poly(const poly& c, cplx w) {
    cplx acc(0.0, 0.0);
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * w + c[k];
    return acc;
}

}  // namespace

cplx series_eval(const std::vector<cplx>& c, cplx w) { return eval_poly(c, w); }

cplx Linearizer::eval(cplx zeta) const { return eval_poly(b, zeta); }

cplx chart_f2(const MapParams& p, LimitCenter center, cplx w) {
    poly num, den;
    chart_fraction(p, center, num, den);
    return eval_poly(num, w) / eval_poly(den, w);
}

TaylorSeries taylor_f2(const MapParams& p, LimitCenter center, int order) {
    if (order < 2) throw std::invalid_argument("taylor_f2: order >= 2 required");
    poly num, den;
    chart_fraction(p, center, num, den);
    // Series division c = num / den; den[0] != 0 (it is alpha resp. 1).
    TaylorSeries ts{center, p.lambda, std::vector<cplx>(std::size_t(order) + 1, cplx(0.0, 0.0))};
    for (int n = 0; n <= order; ++n) {
        cplx s = n < int(num.size()) ? num[n] : cplx(0.0, 0.0);
        for (int j = 1; j < int(den.size()) && j <= n; ++j) s -= den[j] * ts.c[n - j];
        ts.c[n] = s / den[0];
    }
    return ts;
}

Linearizer solve_linearizer(const TaylorSeries& ts, int order) {
    if (order < 2) throw std::invalid_argument("solve_linearizer: order >= 2 required");
    if (order > ts.order())
        throw std::invalid_argument("solve_linearizer: series order too small");
    const cplx lambda = ts.lambda;
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw std::invalid_argument("solve_linearizer: |a_1| must be 1");

    const int N = order;
    Linearizer lin{ts.center, lambda, std::vector<cplx>(std::size_t(N) + 1, cplx(0.0, 0.0))};
    lin.b[1] = cplx(1.0, 0.0);

    // pw[k][n] = [h^k]_n for k <= n; only orders below n feed order n, so the
    // table can be filled while the b_n are being discovered.
    std::vector<std::vector<cplx>> pw(std::size_t(N) + 1,
                                      std::vector<cplx>(std::size_t(N) + 1, cplx(0.0, 0.0)));
    pw[1][1] = cplx(1.0, 0.0);

    cplx lam_pow = lambda;  // lambda^n
    for (int n = 2; n <= N; ++n) {
        lam_pow *= lambda;
        cplx divisor = lam_pow - lambda;
        if (std::abs(divisor) < 1e-12)
            throw SmallDivisorError("linearizer: divisor underflow at order " + std::to_string(n));

        cplx s(0.0, 0.0);
        for (int k = 2; k <= n; ++k) {
            cplx acc(0.0, 0.0);
            for (int j = k - 1; j <= n - 1; ++j) acc += pw[k - 1][j] * lin.b[n - j];
            pw[k][n] = acc;
            s += ts.c[k] * acc;
        }
        lin.b[n] = s / divisor;
        pw[1][n] = lin.b[n];
    }

    // Root-test fit over the top third of indices: log|b_n| ~ c - n log R.
    int lo = std::max(2, N - N / 3 + 1);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    bool any_nonzero = false;
    for (int n = 2; n <= N; ++n) any_nonzero |= std::abs(lin.b[n]) > 1e-290;
    for (int n = lo; n <= N; ++n) {
        double mag = std::abs(lin.b[n]);
        if (mag <= 1e-290) continue;
        double x = n, y = std::log(mag);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    lin.usable_coefficients = m;
    if (!any_nonzero) {
        // F was an exact rotation: h = identity, entire. Radius 1 by
        // convention (the natural scale of the rotation's unit disk model).
        lin.radius_estimate = 1.0;
        lin.radius_fit_ok = true;
        lin.usable_coefficients = N - 1;
    } else if (m >= 16) {
        double denom = double(m) * sxx - sx * sx;
        double slope = (double(m) * sxy - sx * sy) / denom;
        lin.radius_estimate = std::exp(-slope);
        lin.radius_fit_ok = std::isfinite(lin.radius_estimate) && lin.radius_estimate > 0.0;
    }
    return lin;
}

double linearizer_residual(const MapParams& p, const Linearizer& lin, double rho, int n_angles) {
    double worst = 0.0;
    for (int k = 0; k < n_angles; ++k) {
        double phi = 2.0 * M_PI * k / n_angles;
        cplx zeta = std::polar(rho, phi);
        cplx lhs = chart_f2(p, lin.center, lin.eval(zeta));
        cplx rhs = lin.eval(lin.lambda * zeta);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

TrapDisk trap_disk(const Linearizer& lin, double fraction) {
    if (!(fraction > 0.0 && fraction <= 0.6))
        throw std::invalid_argument("trap_disk: fraction must be in (0, 0.6]");
    if (!lin.radius_fit_ok || lin.usable_coefficients < 16)
        throw std::runtime_error("trap_disk: radius estimate unavailable");
    double rho = fraction * lin.radius_estimate;
    double r = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 256; ++k) {
        cplx zeta = std::polar(rho, 2.0 * M_PI * k / 256);
        r = std::min(r, std::abs(lin.eval(zeta)));
    }
    return TrapDisk{lin.center, r};
}

bool in_trap(const TrapDisk& trap, const SpherePoint& z) {
    // |u/v| <= r resp. |v/u| <= r, multiplied out to avoid dividing by zero.
    if (trap.center == LimitCenter::at_zero) return std::abs(z.u) <= trap.radius * std::abs(z.v);
    return std::abs(z.v) <= trap.radius * std::abs(z.u);
}

}  // namespace siegel
