#include "siegel/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace siegel {

namespace {

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
// Only what the rotation-number solve needs: +, -, *, /, sqrt.
struct DD {
    double hi = 0.0, lo = 0.0;
};

DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    DD r = two_sum(s.hi, lo);
    return r;
}

DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, p.lo);
}

DD dd_div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = dd_add(a, dd_mul({-q1, 0.0}, b));
    double q2 = r.hi / b.hi;
    r = dd_add(r, dd_mul({-q2, 0.0}, b));
    double q3 = r.hi / b.hi;
    DD q = two_sum(q1, q2);
    q.lo += q3;
    return two_sum(q.hi, q.lo);
}

DD dd_sqrt(DD a) {
    if (a.hi <= 0.0) return {std::sqrt(a.hi), 0.0};
    double x = std::sqrt(a.hi);
    // One Newton step in double-double: x' = x + (a - x^2) / (2x).
    DD x2 = two_prod(x, x);
    DD diff = dd_add(a, {-x2.hi, -x2.lo});
    double corr = diff.hi / (2.0 * x);
    return two_sum(x, corr);
}

DD dd_from(double v) { return {v, 0.0}; }

// Continued-fraction recurrence state p_{k-1}, p_k, q_{k-1}, q_k.
struct Convergents64 {
    std::int64_t p_prev = 1, p = 0;  // p_{-1} = 1, p_0 = 0 (a_0 = 0)
    std::int64_t q_prev = 0, q = 1;  // q_{-1} = 0, q_0 = 1

    void push(int a) {
        std::int64_t pn = a * p + p_prev;
        std::int64_t qn = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
    }
};

// Value of the continued fraction whose quotient block is `block` and whose
// tail (the remainder after the block, as a number >= 1) is `t`:
//   [0; block, tail...] = (t*p_m + p_{m-1}) / (t*q_m + q_{m-1}).
DD fold_block(const std::vector<int>& block, DD t) {
    Convergents64 c;
    for (int a : block) c.push(a);
    DD num = dd_add(dd_mul(t, dd_from(double(c.p))), dd_from(double(c.p_prev)));
    DD den = dd_add(dd_mul(t, dd_from(double(c.q))), dd_from(double(c.q_prev)));
    return dd_div(num, den);
}

// Purely periodic value x = [0; A, A, A, ...]. The tail after one block is
// 1/x, so x = (p_m + x p_{m-1}) / (q_m + x q_{m-1}), i.e.
//   q_{m-1} x^2 + (q_m - p_{m-1}) x - p_m = 0,   x in (0,1).
DD periodic_value(const std::vector<int>& period) {
    Convergents64 c;
    for (int a : period) c.push(a);
    DD A = dd_from(double(c.q_prev));
    DD B = dd_add(dd_from(double(c.q)), dd_from(-double(c.p_prev)));
    DD C = dd_from(-double(c.p));
    if (c.q_prev == 0) {
        // Single-term period never reaches here (q_0 = 1), kept for safety.
        return dd_div(dd_mul(dd_from(-1.0), C), B);
    }
    // Positive root, evaluated in the cancellation-free form.
    DD disc = dd_add(dd_mul(B, B), dd_mul(dd_from(-4.0), dd_mul(A, C)));
    DD s = dd_sqrt(disc);
    // B > 0 and C < 0 here, so the positive root is 2|C| / (B + sqrt(disc)).
    return dd_div(dd_mul(dd_from(-2.0), C), dd_add(B, s));
}

}  // namespace

RotationNumber::RotationNumber(std::vector<int> preperiod, std::vector<int> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw std::invalid_argument("rotation number: period must be nonempty");
    for (int a : preperiod_)
        if (a <= 0) throw std::invalid_argument("rotation number: partial quotients must be >= 1");
    for (int a : period_)
        if (a <= 0) throw std::invalid_argument("rotation number: partial quotients must be >= 1");

    max_quotient_ = 0;
    for (int a : preperiod_) max_quotient_ = std::max(max_quotient_, a);
    for (int a : period_) max_quotient_ = std::max(max_quotient_, a);

    DD x = periodic_value(period_);
    DD theta = x;
    if (!preperiod_.empty()) {
        // Tail after the preperiod is the periodic block seen as a value >= 1,
        // i.e. [a; rest...] = 1/x.
        DD t = dd_div(dd_from(1.0), x);
        theta = fold_block(preperiod_, t);
    }
    value_ = theta.hi;
    value_lo_ = theta.lo;
    if (!(value_ > 0.0 && value_ < 1.0))
        throw std::invalid_argument("rotation number: value not in (0,1)");
}

std::pair<double, double> RotationNumber::value_dd() const { return {value_, value_lo_}; }

int RotationNumber::quotient(std::size_t n) const {
    if (n == 0) throw std::invalid_argument("quotient index starts at 1");
    std::size_t i = n - 1;
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
}

std::vector<std::pair<std::int64_t, std::int64_t>> RotationNumber::convergents(std::size_t n) const {
    if (n < 1) throw std::invalid_argument("convergents: n >= 1 required");
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    out.reserve(n);
    Convergents64 c;
    for (std::size_t k = 1; k <= n; ++k) {
        c.push(quotient(k));
        if (c.q < c.q_prev)  // signed overflow guard
            throw std::overflow_error("convergents: denominator overflow");
        out.emplace_back(c.p, c.q);
    }
    return out;
}

}  // namespace siegel
