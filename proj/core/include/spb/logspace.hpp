#pragma once

// Log-domain arithmetic helpers. Everything probability-like in this
// library is carried as a natural log; -inf is the log of zero and is
// legal input everywhere here.

#include <cmath>
#include <limits>
#include <span>

namespace spb {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// ln(e^a + e^b) without leaving the log domain.
inline double log_add(double a, double b) {
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// ln(sum_i e^(v_i)); empty input gives -inf.
inline double log_sum_exp(std::span<const double> v) {
    double m = neg_inf;
    for (double x : v)
        if (x > m) m = x;
    if (m == neg_inf || std::isinf(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

// Streaming log-sum-exp accumulator for loops that cannot afford a
// temporary buffer. Two-pass accuracy is not needed here: the shift is
// rebased whenever a new maximum arrives.
class LogAccumulator {
public:
    void add(double x) {
        if (x == neg_inf) return;
        if (x > max_) {
            if (max_ != neg_inf) sum_ *= std::exp(max_ - x);
            max_ = x;
            sum_ += 1.0;
        } else {
            sum_ += std::exp(x - max_);
        }
    }
    double value() const {
        if (max_ == neg_inf) return neg_inf;
        return max_ + std::log(sum_);
    }

private:
    double max_ = neg_inf;
    double sum_ = 0.0;
};

// ln(1 - e^x) for x < 0, stable near both ends.
inline double log1mexp(double x) {
    if (x >= 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (x > -0.6931471805599453)  // -ln 2
        return std::log(-std::expm1(x));
    return std::log1p(-std::exp(x));
}

// ln of the standard normal CDF, usable far into the lower tail where
// Phi underflows. Upper branch uses erfc directly; lower branch switches
// to the continued-fraction-corrected asymptotic series.
inline double log_norm_cdf(double z) {
    if (z > -8.0) {
        double p = 0.5 * std::erfc(-z / std::sqrt(2.0));
        if (p > 0.0) return std::log(p);
    }
    // Phi(z) ~ phi(z)/(-z) * (1 - 1/z^2 + 3/z^4 - 15/z^6 + 105/z^8)
    const double z2 = z * z;
    double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2)
                    + 105.0 / (z2 * z2 * z2 * z2);
    return -0.5 * z2 - 0.5 * std::log(2.0 * M_PI) - std::log(-z) + std::log(series);
}

// ln Q(z) = ln(1 - Phi(z)) for the Gaussian tail.
inline double log_norm_tail(double z) { return log_norm_cdf(-z); }

}  // namespace spb
