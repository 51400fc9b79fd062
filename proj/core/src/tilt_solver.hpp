#pragma once

// Internal machinery shared by the VF and ISP bounds: both solve an
// implicit rate equation in s = rho/(1+rho) for each candidate x and
// then minimize the resulting exponent over x > sqrt(2)/2. Not part of
// the installed API.

#include <cmath>
#include <optional>

namespace spb::detail {

struct SRoot {
    bool found = false;
    double s = 0.0;
    double residual = 0.0;  // |h(s)| relative to the equation scale
    int iterations = 0;
};

// First sign change of h on (1e-6, 1-1e-6), located by an ascending
// 32-sample scan and refined by bisection; ties break toward smaller s.
// `scale` normalizes the reported residual.
template <class F>
SRoot solve_s_root(F&& h, double scale, int prescan = 32) {
    const double lo_end = 1e-6, hi_end = 1.0 - 1e-6;
    SRoot out;
    double prev_s = lo_end;
    double prev_v = h(prev_s);
    ++out.iterations;
    for (int i = 1; i < prescan; ++i) {
        const double s = lo_end + (hi_end - lo_end) * i / (prescan - 1);
        const double v = h(s);
        ++out.iterations;
        if (prev_v == 0.0) {
            out.found = true;
            out.s = prev_s;
            out.residual = 0.0;
            return out;
        }
        if (prev_v * v < 0.0) {
            const double tol = 1e-11 * std::max(std::fabs(scale), 1e-30);
            double a = prev_s, b = s, fa = prev_v;
            for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = h(mid);
                ++out.iterations;
                if (std::fabs(fm) < tol) {
                    a = b = mid;
                    break;
                }
                if (fa * fm <= 0.0)
                    b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
            }
            out.found = true;
            out.s = 0.5 * (a + b);
            out.residual = std::fabs(h(out.s)) / std::max(std::fabs(scale), 1e-30);
            return out;
        }
        prev_s = s;
        prev_v = v;
    }
    return out;
}

struct XOptimum {
    double x = 0.0;
    double value = 0.0;
    bool found = false;
};

// Golden-section minimization over x = sqrt(1/2) + exp(t), t in [-12, 6].
// fn returns nullopt where the bound is vacuous (treated as +inf).
template <class F>
XOptimum minimize_over_x(F&& fn, int max_iters = 200) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    const double off = std::sqrt(0.5);
    auto eval = [&](double t) {
        std::optional<double> v = fn(off + std::exp(t));
        return v ? *v : std::numeric_limits<double>::infinity();
    };
    double a = -12.0, b = 6.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = eval(c), fd = eval(d);
    int flat = 0;
    for (int it = 0; it < max_iters && b - a > 1e-12; ++it) {
        // once the probe values agree to well past double resolution the
        // minimum is pinned; further shrinking only burns evaluations
        if (std::isfinite(fc) && std::isfinite(fd) &&
            std::fabs(fc - fd) < 1e-13 * std::max(1.0, std::fabs(fc))) {
            if (++flat >= 4) break;
        } else {
            flat = 0;
        }
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = eval(d);
        }
    }
    XOptimum out;
    const double t = fc < fd ? c : d;
    const double v = std::min(fc, fd);
    if (!std::isfinite(v)) return out;
    out.found = true;
    out.x = off + std::exp(t);
    out.value = v;
    return out;
}

}  // namespace spb::detail
