#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace siegel {

// Irrational rotation number in (0,1) of bounded type, given by the partial
// quotients of its continued fraction [0; a_1, a_2, ...] with an eventually
// periodic tail:  quotients = preperiod followed by period repeated forever.
//
// The value is obtained exactly from the fixed-point quadratic of the period
// block and then folded through the preperiod as a Moebius transform, rather
// than by truncating the expansion.
class RotationNumber {
public:
    RotationNumber(std::vector<int> preperiod, std::vector<int> period);

    double value() const { return value_; }
    // Same computation carried out in double-double arithmetic; the result
    // is the compensated (hi, lo) pair with hi == value() to <= 2 ulp.
    std::pair<double, double> value_dd() const;

    const std::vector<int>& preperiod() const { return preperiod_; }
    const std::vector<int>& period() const { return period_; }
    int max_quotient() const { return max_quotient_; }

    // nth partial quotient a_n, n >= 1 (period unrolled as needed).
    int quotient(std::size_t n) const;

    // First n convergents p_k/q_k of [0; a_1, a_2, ...], k = 1..n.
    std::vector<std::pair<std::int64_t, std::int64_t>> convergents(std::size_t n) const;

    static RotationNumber golden() { return RotationNumber({}, {1}); }

private:
    std::vector<int> preperiod_;
    std::vector<int> period_;
    double value_ = 0.0;
    double value_lo_ = 0.0;
    int max_quotient_ = 1;
};

}  // namespace siegel
