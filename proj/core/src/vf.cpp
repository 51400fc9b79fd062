#include "spb/vf.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "spb/exponents.hpp"
#include "spb/logspace.hpp"
#include "tilt_solver.hpp"

namespace spb {

namespace {

// ln(2 - 1/x^2), the x-dependent piece shared by both backoff terms.
double ln_gap(double x) { return std::log(2.0 - 1.0 / (x * x)); }

// Everything the root equation and the exponent need at one value of s.
struct NuPoint {
    double nu1_bar = 0.0;  // sum_k q_k nu1_k
    double nu2_bar = 0.0;  // sum_k q_k nu2_k
    double e0 = 0.0;
};

void per_input_nu(const Channel& ch, double s, double rho,
                  const std::vector<double>& ln_alpha, std::size_t k,
                  double* mean, double* var) {
    const std::size_t kc = ch.input_count(), jc = ch.output_count();
    const double* lp = ch.log_p();
    const double* lw = ch.log_w();
    LogAccumulator norm;
    for (std::size_t j = 0; j < jc; ++j) {
        const double lpj = lp[j * kc + k];
        if (lpj == neg_inf || ln_alpha[j] == neg_inf) continue;
        norm.add(lw[j] + (1.0 - s) * lpj + rho * ln_alpha[j]);
    }
    const double zk = norm.value();
    if (zk == neg_inf)
        throw std::runtime_error("composite measure vanishes for input " +
                                 std::to_string(k));
    double m = 0.0;
    for (std::size_t j = 0; j < jc; ++j) {
        const double lpj = lp[j * kc + k];
        if (lpj == neg_inf || ln_alpha[j] == neg_inf) continue;
        const double w = std::exp(lw[j] + (1.0 - s) * lpj + rho * ln_alpha[j] - zk);
        const double xj = -s * lpj + rho * ln_alpha[j];
        if (!std::isfinite(xj))
            throw std::runtime_error("non-finite log ratio at output " +
                                     std::to_string(j) + ", input " +
                                     std::to_string(k));
        m += w * xj;
    }
    double v = 0.0;
    for (std::size_t j = 0; j < jc; ++j) {
        const double lpj = lp[j * kc + k];
        if (lpj == neg_inf || ln_alpha[j] == neg_inf) continue;
        const double w = std::exp(lw[j] + (1.0 - s) * lpj + rho * ln_alpha[j] - zk);
        const double xj = -s * lpj + rho * ln_alpha[j];
        v += w * (xj - m) * (xj - m);
    }
    *mean = m;
    *var = v;
}

NuPoint nu_point(const Channel& ch, double s) {
    const double rho = s / (1.0 - s);
    const std::size_t kc = ch.input_count(), jc = ch.output_count();
    const double* lp = ch.log_p();
    const double* lw = ch.log_w();

    const InputDistribution q = optimal_q(ch, rho);
    std::vector<double> ln_alpha(jc);
    for (std::size_t j = 0; j < jc; ++j) {
        LogAccumulator acc;
        for (std::size_t k = 0; k < kc; ++k) {
            if (q[k] <= 0.0) continue;
            const double lpj = lp[j * kc + k];
            if (lpj == neg_inf) continue;
            acc.add(std::log(q[k]) + (1.0 - s) * lpj);
        }
        ln_alpha[j] = acc.value();
    }

    NuPoint out;
    LogAccumulator z;
    for (std::size_t j = 0; j < jc; ++j)
        if (ln_alpha[j] != neg_inf) z.add(lw[j] + (1.0 + rho) * ln_alpha[j]);
    out.e0 = -z.value();

    if (ch.symmetric()) {
        double m = 0.0, v = 0.0;
        per_input_nu(ch, s, rho, ln_alpha, 0, &m, &v);
        out.nu1_bar = m;
        out.nu2_bar = v;
        return out;
    }
    for (std::size_t k = 0; k < kc; ++k) {
        if (q[k] <= 0.0) continue;
        double m = 0.0, v = 0.0;
        per_input_nu(ch, s, rho, ln_alpha, k, &m, &v);
        out.nu1_bar += q[k] * m;
        out.nu2_bar += q[k] * v;
    }
    return out;
}

}  // namespace

VfTerms vf_terms(const Channel& ch, double rho) {
    if (!(rho >= 0.0)) throw std::invalid_argument("rho must be nonnegative");
    const double s = rho / (1.0 + rho);
    const std::size_t kc = ch.input_count(), jc = ch.output_count();
    const double* lp = ch.log_p();

    VfTerms out;
    out.q = optimal_q(ch, rho);
    std::vector<double> ln_alpha(jc);
    for (std::size_t j = 0; j < jc; ++j) {
        LogAccumulator acc;
        for (std::size_t k = 0; k < kc; ++k) {
            if (out.q[k] <= 0.0) continue;
            const double lpj = lp[j * kc + k];
            if (lpj == neg_inf) continue;
            acc.add(std::log(out.q[k]) + (1.0 - s) * lpj);
        }
        ln_alpha[j] = acc.value();
    }

    out.log_beta.assign(jc * kc, neg_inf);
    for (std::size_t j = 0; j < jc; ++j)
        for (std::size_t k = 0; k < kc; ++k) {
            const double lpj = lp[j * kc + k];
            if (lpj == neg_inf || ln_alpha[j] == neg_inf) continue;
            out.log_beta[j * kc + k] = (1.0 - s) * lpj + rho * ln_alpha[j];
        }

    out.nu1.resize(kc);
    out.nu2.resize(kc);
    for (std::size_t k = 0; k < kc; ++k)
        per_input_nu(ch, s, rho, ln_alpha, k, &out.nu1[k], &out.nu2[k]);
    return out;
}

BoundResult vf_bound(const Channel& ch, const CodeSpec& spec,
                     std::size_t alphabet_size) {
    spec.validate();
    if (alphabet_size < 1)
        throw std::invalid_argument("alphabet size must be positive");

    const double n = static_cast<double>(spec.n);
    const double r = spec.rate_nats;
    const double ln8 = std::log(8.0);
    const double kd = static_cast<double>(alphabet_size);
    // ln of the number of length-n compositions over the input alphabet
    const double ln_comp =
        std::lgamma(n + kd) - std::lgamma(n + 1.0) - std::lgamma(kd);

    std::map<double, NuPoint> cache;
    auto at = [&](double s) -> const NuPoint& {
        auto it = cache.find(s);
        if (it == cache.end()) it = cache.emplace(s, nu_point(ch, s)).first;
        return it->second;
    };

    detail::SRoot last_root;
    auto exponent_at = [&](double x) -> std::optional<double> {
        const double tgt = r - (ln8 + ln_comp - ln_gap(x)) / n;
        if (tgt <= 0.0) return std::nullopt;
        auto h = [&](double s) {
            const NuPoint& p = at(s);
            const double inv_rho = (1.0 - s) / s;
            return inv_rho * (-p.nu1_bar + x * std::sqrt(2.0 * p.nu2_bar / n)) -
                   tgt;
        };
        const detail::SRoot root = detail::solve_s_root(h, tgt);
        if (!root.found) return std::nullopt;
        last_root = root;
        const NuPoint& p = at(root.s);
        const double rho = root.s / (1.0 - root.s);
        return p.e0 - rho * tgt + x * std::sqrt(8.0 * p.nu2_bar / n) +
               (ln8 - ln_gap(x)) / n;
    };

    BoundResult out;
    out.kind = BoundKind::Vf;
    const detail::XOptimum opt = detail::minimize_over_x(exponent_at);
    if (!opt.found) {
        out.vacuous = true;
        out.reason = "implicit rate equation has no root for any slope";
        out.log_pe = 0.0;
        return out;
    }
    exponent_at(opt.x);  // refresh diagnostics at the optimizer
    out.log_pe = std::min(0.0, -n * opt.value);
    out.x_star = opt.x;
    out.s_star = last_root.s;
    out.rho_star = last_root.s / (1.0 - last_root.s);
    out.root_residual = last_root.residual;
    out.root_iterations = last_root.iterations;
    if (!ch.symmetric())
        out.caveat = "composition count assumes the optimizing input type; "
                     "unverified for asymmetric channels";
    return out;
}

BoundResult vf_bound(const Channel& ch, const CodeSpec& spec) {
    return vf_bound(ch, spec, ch.input_count());
}

}  // namespace spb
