#include "spb/sp59.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "spb/logspace.hpp"

namespace spb {

namespace {

// ln of a Simpson panel for the integral of exp(g).
double panel(double h, double fa, double fm, double fb) {
    LogAccumulator acc;
    acc.add(fa + std::log(h / 6.0));
    acc.add(fm + std::log(4.0 * h / 6.0));
    acc.add(fb + std::log(h / 6.0));
    return acc.value();
}

double simpson_rec(const std::function<double(double)>& g, double a, double fa,
                   double m, double fm, double b, double fb, double whole,
                   int depth, int min_splits, double tol) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = panel(m - a, fa, flm, fm);
    const double right = panel(b - m, fm, frm, fb);
    const double two = log_add(left, right);
    if (depth <= 0) return two;
    const bool converged =
        (two == neg_inf && whole == neg_inf) || std::fabs(two - whole) < tol;
    if (min_splits <= 0 && converged) return two;
    return log_add(simpson_rec(g, a, fa, lm, flm, m, fm, left, depth - 1,
                               min_splits - 1, tol),
                   simpson_rec(g, m, fm, rm, frm, b, fb, right, depth - 1,
                               min_splits - 1, tol));
}

// ln of integral_a^b exp(g(t)) dt, adaptive in the log domain. The
// forced initial splits keep a narrow interior spike from slipping
// through a coincidental coarse-level agreement. `noise` bounds the
// absolute error of one g evaluation; the self-consistency target
// cannot meaningfully sit below the noise in the samples themselves.
double log_integral(const std::function<double(double)>& g, double a, double b,
                    double noise = 0.0) {
    if (!(b > a)) return neg_inf;
    const double tol = std::max(1e-10, 4.0 * noise);
    const double m = 0.5 * (a + b);
    const double fa = g(a), fm = g(m), fb = g(b);
    return simpson_rec(g, a, fa, m, fm, b, fb, panel(b - a, fa, fm, fb), 48, 6,
                       tol);
}

}  // namespace

namespace {

// ln of integral_0^theta sin(t)^expo dt. The integrand spans thousands
// of decades, so the range is clipped where it sits 80 nats below its
// peak (the peak is at min(theta, pi/2) and sin is monotone on each
// side, giving closed-form clip points); the discarded mass is below
// e^-80 of the total, far inside the quadrature tolerance.
double log_cap_integral(double expo, double theta) {
    if (expo <= 0.0) return log_integral([](double) { return 0.0; }, 0.0, theta);
    const double peak = std::min(theta, 0.5 * M_PI);
    // normalize by the peak value: panel logs stay O(1), so the
    // convergence test is not defeated by the ulp of huge log values
    const double g_ref = expo * std::log(std::sin(peak));
    auto g = [expo, g_ref](double t) {
        const double s = std::sin(t);
        return s > 0.0 ? expo * std::log(s) - g_ref : neg_inf;
    };
    const double sin_clip = std::sin(peak) * std::exp(-80.0 / expo);
    const double lo = std::asin(sin_clip);
    const double hi =
        theta <= 0.5 * M_PI ? theta : std::min(theta, M_PI - lo);
    // each sample forms expo*ln(sin t) before subtracting g_ref, so its
    // absolute error scales with that magnitude
    const double noise = (std::fabs(g_ref) + 80.0) * 1e-15;
    return g_ref + log_integral(g, lo, hi, noise);
}

}  // namespace

ConeGeometry cone_half_angle(std::size_t n, double rate_nats) {
    if (n < 2)
        throw std::invalid_argument("cone geometry requires at least 2 dimensions");
    if (!(rate_nats > 0)) throw std::invalid_argument("rate must be positive");

    const double expo = static_cast<double>(n) - 2.0;
    const double log_denom = log_cap_integral(expo, M_PI);
    const double target = -static_cast<double>(n) * rate_nats;

    // cap fraction is increasing in theta; bisect on its log
    double lo = 1e-9, hi = M_PI - 1e-9;
    if (log_cap_integral(expo, lo) - log_denom > target)
        throw std::invalid_argument("rate too large for this dimension count");
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (log_cap_integral(expo, mid) - log_denom > target)
            hi = mid;
        else
            lo = mid;
    }
    ConeGeometry out;
    out.half_angle = 0.5 * (lo + hi);
    out.log_fraction = log_cap_integral(expo, out.half_angle) - log_denom;
    out.residual = std::fabs(out.log_fraction - target);
    return out;
}

BoundResult sp59_bound(std::size_t n, double rate_nats, double es_over_n0) {
    if (!(es_over_n0 > 0)) throw std::invalid_argument("SNR must be positive");
    const ConeGeometry cone = cone_half_angle(n, rate_nats);
    if (cone.half_angle < 1e-6)
        throw std::runtime_error("cone angle underflows at this rate");

    // Noise component along the signal is standard normal, the
    // orthogonal norm is chi with n-1 degrees of freedom; the signal
    // sits at radius c in noise units.
    const double c = std::sqrt(2.0 * static_cast<double>(n) * es_over_n0);
    const double k = static_cast<double>(n) - 1.0;
    const double cot = std::cos(cone.half_angle) / std::sin(cone.half_angle);
    const double ln_chi_norm =
        -(0.5 * k - 1.0) * std::log(2.0) - std::lgamma(0.5 * k);
    auto g = [&](double u) {
        if (!(u > 0.0)) return k > 1.0 ? neg_inf : ln_chi_norm + log_norm_cdf(-c);
        return (k - 1.0) * std::log(u) - 0.5 * u * u + ln_chi_norm +
               log_norm_cdf(u * cot - c);
    };

    // Locate the unimodal integrand's peak, then expand an interval
    // around it until both ends are negligible.
    double u_cap = std::sqrt(k) + 12.0;
    if (cot > 0.0) u_cap += c / cot;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 1e-12, b = u_cap;
    double c1 = b - gr * (b - a), d1 = a + gr * (b - a);
    double f1 = g(c1), f2 = g(d1);
    for (int it = 0; it < 200 && b - a > 1e-9 * u_cap; ++it) {
        if (f1 > f2) {
            b = d1;
            d1 = c1;
            f2 = f1;
            c1 = b - gr * (b - a);
            f1 = g(c1);
        } else {
            a = c1;
            c1 = d1;
            f1 = f2;
            d1 = a + gr * (b - a);
            f2 = g(d1);
        }
    }
    const double u_peak = 0.5 * (a + b);
    const double g_peak = g(u_peak);
    // clip the integrand 65 nats below its peak so the tail panels
    // collapse to exact zeros instead of being polished at full depth,
    // and normalize by the peak so panel logs stay O(1)
    auto g_clip = [&](double u) {
        const double v = g(u) - g_peak;
        return v > -65.0 ? v : neg_inf;
    };
    double lo = u_peak, hi = u_peak;
    double step = 1.0;
    while (lo > 0.0 && g(lo) > g_peak - 60.0) {
        lo = std::max(0.0, lo - step);
        step *= 2.0;
    }
    step = 1.0;
    while (g(hi) > g_peak - 60.0) {
        hi += step;
        step *= 2.0;
    }

    // sample error scales with the large intermediates in the chi density
    const double u_ref = std::max(u_peak, 1.0);
    const double noise =
        ((k - 1.0) * std::fabs(std::log(u_ref)) + 0.5 * u_ref * u_ref +
         std::fabs(ln_chi_norm) + 0.5 * c * c + std::fabs(g_peak)) *
        1e-15;

    BoundResult out;
    out.kind = BoundKind::Sp59;
    out.log_pe = std::min(0.0, g_peak + log_integral(g_clip, lo, hi, noise));
    out.root_residual = cone.residual;
    return out;
}

}  // namespace spb
