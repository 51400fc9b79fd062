#include "spb/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spb/logspace.hpp"

namespace spb {

namespace {

constexpr double s_floor = 1e-6;  // guards fractional-power endpoint singularities

double clamp_s(double s) { return std::clamp(s, s_floor, 1.0 - s_floor); }

std::vector<double> log_q(const InputDistribution& q) {
    std::vector<double> lq(q.size());
    for (std::size_t k = 0; k < q.size(); ++k)
        lq[k] = q[k] > 0.0 ? std::log(q[k]) : neg_inf;
    return lq;
}

// alpha_{j,s} = sum_k q_k P(j|k)^(1-s) for all j, in log domain.
std::vector<double> log_alpha(const Channel& ch, double s, const std::vector<double>& lq) {
    const std::size_t J = ch.output_count(), K = ch.input_count();
    const double* lp = ch.log_p();
    std::vector<double> la(J);
    for (std::size_t j = 0; j < J; ++j) {
        const double* row = lp + j * K;
        double m = neg_inf;
        for (std::size_t k = 0; k < K; ++k) {
            double v = lq[k] + (1.0 - s) * row[k];
            if (v > m) m = v;
        }
        if (m == neg_inf) {
            la[j] = neg_inf;
            continue;
        }
        double sum = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            double v = lq[k] + (1.0 - s) * row[k];
            if (v != neg_inf) sum += std::exp(v - m);
        }
        la[j] = m + std::log(sum);
    }
    return la;
}

}  // namespace

double e0(const Channel& ch, double rho, const InputDistribution& q) {
    if (!(rho >= 0.0)) throw std::invalid_argument("rho must be nonnegative");
    q.validate();
    if (q.size() != ch.input_count()) throw std::invalid_argument("input distribution size mismatch");
    const double s = rho / (1.0 + rho);
    const std::vector<double> lq = log_q(q);
    const std::vector<double> la = log_alpha(ch, s, lq);
    const double* lw = ch.log_w();
    LogAccumulator acc;
    for (std::size_t j = 0; j < ch.output_count(); ++j)
        if (la[j] != neg_inf) acc.add(lw[j] + (1.0 + rho) * la[j]);
    return -acc.value();
}

double e0(const Channel& ch, double rho) { return e0(ch, rho, optimal_q(ch, rho)); }

InputDistribution optimal_q(const Channel& ch, double rho) {
    if (!(rho >= 0.0)) throw std::invalid_argument("rho must be nonnegative");
    const std::size_t K = ch.input_count();
    if (ch.symmetric() || K == 1 || rho == 0.0) return uniform_input(K);

    const double s = rho / (1.0 + rho);
    const std::size_t J = ch.output_count();
    const double* lp = ch.log_p();
    const double* lw = ch.log_w();

    InputDistribution q = uniform_input(K);
    std::vector<double> lb(K);
    double residual = 0.0;
    for (int it = 0; it < 10000; ++it) {
        const std::vector<double> lq = log_q(q);
        const std::vector<double> la = log_alpha(ch, s, lq);
        // per-letter stationarity bracket b_k = sum_j P^(1-s) alpha^(s/(1-s))
        for (std::size_t k = 0; k < K; ++k) {
            LogAccumulator acc;
            for (std::size_t j = 0; j < J; ++j) {
                if (la[j] == neg_inf) continue;
                double v = lw[j] + (1.0 - s) * lp[j * K + k] + (s / (1.0 - s)) * la[j];
                acc.add(v);
            }
            lb[k] = acc.value();
        }
        LogAccumulator mean;
        for (std::size_t k = 0; k < K; ++k)
            if (q[k] > 0.0) mean.add(lq[k] + lb[k]);
        const double lmean = mean.value();
        residual = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            if (q[k] > 1e-15) residual = std::max(residual, std::fabs(std::exp(lb[k] - lmean) - 1.0));
        if (residual < 1e-10) return q;

        // multiplicative update, then a 0.5 blend with the previous iterate
        std::vector<double> qn(K);
        double norm = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            qn[k] = q[k] > 0.0 ? std::exp(lq[k] + lb[k] - lmean) : 0.0;
            norm += qn[k];
        }
        for (std::size_t k = 0; k < K; ++k) q.q[k] = 0.5 * q.q[k] + 0.5 * qn[k] / norm;
    }
    throw std::runtime_error("input-distribution fixed point did not converge; residual " +
                             std::to_string(residual));
}

ExponentValue esp(const Channel& ch, double rate_nats) {
    if (!(rate_nats > 0.0)) throw std::invalid_argument("rate must be positive");
    auto g = [&](double rho) { return e0(ch, rho) - rho * rate_nats; };

    // Bracket the concave maximum by doubling; divergence when still
    // climbing at rho = 1024 > 1e3.
    double lo = 0.0, hi = 1.0;
    double g_prev = 0.0;  // g(0) = 0
    double prev_prev = 0.0, prev_rho = 0.0;
    bool bracketed = false;
    for (double rho = 1.0; rho <= 1024.0; rho *= 2.0) {
        double v = g(rho);
        if (v < g_prev) {
            lo = prev_prev;
            hi = rho;
            bracketed = true;
            break;
        }
        prev_prev = prev_rho;
        prev_rho = rho;
        g_prev = v;
    }
    ExponentValue out;
    if (!bracketed) {
        out.diverges = true;
        out.value = std::numeric_limits<double>::infinity();
        out.optimizer_rho = std::numeric_limits<double>::infinity();
        out.optimizer_q = optimal_q(ch, 1024.0);
        return out;
    }

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = g(c), fd = g(d);
    for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, b); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = g(d);
        }
    }
    double rho = fc > fd ? c : d;
    double val = std::max(fc, fd);
    if (val <= 1e-15) {  // at or above capacity
        out.value = 0.0;
        out.optimizer_rho = 0.0;
        out.optimizer_q = optimal_q(ch, 0.0);
        return out;
    }
    out.value = val;
    out.optimizer_rho = rho;
    out.optimizer_q = optimal_q(ch, rho);
    return out;
}

BoundResult random_coding_bound(const Channel& ch, double n, double rate_nats) {
    if (!(n >= 1.0)) throw std::invalid_argument("block length must be >= 1");
    if (!(rate_nats > 0.0)) throw std::invalid_argument("rate must be positive");
    auto g = [&](double rho) { return e0(ch, rho) - rho * rate_nats; };

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 1.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = g(c), fd = g(d);
    for (int it = 0; it < 120 && b - a > 1e-14; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = g(d);
        }
    }
    double best = std::max(fc, fd);
    double rho = fc > fd ? c : d;
    double edge = g(1.0);  // rho = 1 endpoint; rho = 0 gives exactly 0
    if (edge > best) {
        best = edge;
        rho = 1.0;
    }
    BoundResult r;
    r.kind = BoundKind::RandomCoding;
    if (best <= 1e-12) {  // exponent-scale noise floor at the rho = 0 edge
        r.log_pe = 0.0;
        r.rho_star = 0.0;
        r.vacuous = true;
        r.reason = "rate at or above capacity";
        return r;
    }
    r.log_pe = -n * best;
    r.rho_star = rho;
    return r;
}

namespace {

struct TiltState {
    double s = 0.0;
    InputDistribution q;
    std::vector<double> lq;
    std::vector<double> ln_alpha;  // J
    double ln_z = 0.0;
    std::vector<double> ln_f;  // J
};

TiltState make_tilt(const Channel& ch, double s_in) {
    TiltState t;
    t.s = clamp_s(s_in);
    const double s = t.s;
    const double rho = s / (1.0 - s);
    t.q = optimal_q(ch, rho);
    for (std::size_t k = 0; k < t.q.size(); ++k)
        if (!(t.q[k] > 0.0))
            throw std::runtime_error("tilting measure undefined: optimal input places zero mass on letter " +
                                     std::to_string(k));
    t.lq = log_q(t.q);
    t.ln_alpha = log_alpha(ch, s, t.lq);
    const double* lw = ch.log_w();
    LogAccumulator z;
    for (std::size_t j = 0; j < ch.output_count(); ++j)
        if (t.ln_alpha[j] != neg_inf) z.add(lw[j] + t.ln_alpha[j] / (1.0 - s));
    t.ln_z = z.value();
    t.ln_f.resize(ch.output_count());
    for (std::size_t j = 0; j < ch.output_count(); ++j)
        t.ln_f[j] = t.ln_alpha[j] == neg_inf ? neg_inf : t.ln_alpha[j] / (1.0 - s) - t.ln_z;
    return t;
}

}  // namespace

TiltedMeasure tilted_measure(const Channel& ch, double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s must lie in (0,1)");
    TiltState t = make_tilt(ch, s);
    return TiltedMeasure{std::move(t.ln_f), t.s};
}

MuParts mu0_parts(const Channel& ch, double s_in) {
    if (!(s_in > 0.0 && s_in < 1.0)) throw std::invalid_argument("s must lie in (0,1)");
    const TiltState t = make_tilt(ch, s_in);
    const double s = t.s;
    const std::size_t J = ch.output_count(), K = ch.input_count();
    const double* lp = ch.log_p();
    const double* lw = ch.log_w();

    // phi_j = d(ln f_j)/ds up to the common -dlnZ/ds shift:
    // phi_j = ln alpha_j/(1-s)^2 - E_hat_j[ln P]/(1-s), with E_hat the
    // alpha posterior over inputs at output j.
    std::vector<double> phi(J, 0.0);
    for (std::size_t j = 0; j < J; ++j) {
        if (t.ln_alpha[j] == neg_inf) continue;
        const double* row = lp + j * K;
        double e_lnp = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            if (row[k] == neg_inf) continue;
            double r = std::exp(t.lq[k] + (1.0 - s) * row[k] - t.ln_alpha[j]);
            e_lnp += r * row[k];
        }
        phi[j] = t.ln_alpha[j] / ((1.0 - s) * (1.0 - s)) - e_lnp / (1.0 - s);
    }
    double e_f_phi = 0.0;
    for (std::size_t j = 0; j < J; ++j)
        if (t.ln_f[j] != neg_inf) e_f_phi += std::exp(lw[j] + t.ln_f[j]) * phi[j];

    // Per-input tilted moments; symmetric channels collapse to k = 0.
    const std::size_t k_count = ch.symmetric() ? 1 : K;
    std::vector<double> mu_k(k_count), mean_k(k_count), var_k(k_count), a_k(k_count), b_k(k_count);
    std::vector<double> lt(J);
    for (std::size_t k = 0; k < k_count; ++k) {
        LogAccumulator acc;
        for (std::size_t j = 0; j < J; ++j) {
            double v = (t.ln_f[j] == neg_inf || lp[j * K + k] == neg_inf)
                           ? neg_inf
                           : lw[j] + (1.0 - s) * lp[j * K + k] + s * t.ln_f[j];
            lt[j] = v;
            acc.add(v);
        }
        mu_k[k] = acc.value();
        double mean = 0.0, am = 0.0, bm = 0.0;
        for (std::size_t j = 0; j < J; ++j) {
            if (lt[j] == neg_inf) continue;
            double w = std::exp(lt[j] - mu_k[k]);
            double x = t.ln_f[j] - lp[j * K + k];
            double psi = phi[j] - e_f_phi;
            mean += w * x;
            am += w * psi;
            bm += w * psi * psi;
        }
        double var = 0.0;
        for (std::size_t j = 0; j < J; ++j) {
            if (lt[j] == neg_inf) continue;
            double w = std::exp(lt[j] - mu_k[k]);
            double x = t.ln_f[j] - lp[j * K + k] - mean;
            var += w * x * x;
        }
        mean_k[k] = mean;
        var_k[k] = var;
        a_k[k] = am;
        b_k[k] = bm;
    }

    if (!ch.symmetric() && K > 1) {
        double mu_lo = mu_k[0], mu_hi = mu_k[0];
        for (double v : mu_k) {
            mu_lo = std::min(mu_lo, v);
            mu_hi = std::max(mu_hi, v);
        }
        if (mu_hi - mu_lo > 1e-6)
            throw std::runtime_error("per-input tilted values disagree (spread " +
                                     std::to_string(mu_hi - mu_lo) +
                                     "); input support condition violated");
    }

    MuParts out;
    double mu0 = 0.0, mu1 = 0.0, v2 = 0.0, corr = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) {
        double w = ch.symmetric() ? 1.0 : t.q[k];
        mu0 += w * mu_k[k];
        mu1 += w * mean_k[k];
        v2 += w * var_k[k];
        corr += w * (s * (1.0 - s) * b_k[k] + s * s * a_k[k] * a_k[k]);
    }
    out.total.mu0 = mu0;
    out.total.mu0_prime = mu1;
    out.total.mu0_second = v2 + corr;
    out.fixed_f_second = v2;
    out.ln_z = t.ln_z;
    return out;
}

MuTriple mu0_with_derivatives(const Channel& ch, double s) { return mu0_parts(ch, s).total; }

double capacity(const Channel& ch, const InputDistribution& q) {
    q.validate();
    if (q.size() != ch.input_count()) throw std::invalid_argument("input distribution size mismatch");
    const std::size_t J = ch.output_count(), K = ch.input_count();
    const double* lp = ch.log_p();
    const double* lw = ch.log_w();
    const std::vector<double> lq = log_q(q);
    double info = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        const double* row = lp + j * K;
        double m = neg_inf;
        for (std::size_t k = 0; k < K; ++k) {
            double v = lq[k] + row[k];
            if (v > m) m = v;
        }
        if (m == neg_inf) continue;
        double sum = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            if (lq[k] + row[k] != neg_inf) sum += std::exp(lq[k] + row[k] - m);
        double ln_pbar = m + std::log(sum);
        for (std::size_t k = 0; k < K; ++k) {
            if (q[k] == 0.0 || row[k] == neg_inf) continue;
            info += q[k] * std::exp(lw[j] + row[k]) * (row[k] - ln_pbar);
        }
    }
    return info;
}

double capacity(const Channel& ch) {
    const std::size_t K = ch.input_count();
    if (ch.symmetric() || K == 1) return capacity(ch, uniform_input(K));

    // Alternating maximization over the input distribution.
    const std::size_t J = ch.output_count();
    const double* lp = ch.log_p();
    const double* lw = ch.log_w();
    InputDistribution q = uniform_input(K);
    for (int it = 0; it < 10000; ++it) {
        const std::vector<double> lq = log_q(q);
        std::vector<double> ln_pbar(J, neg_inf);
        for (std::size_t j = 0; j < J; ++j) {
            LogAccumulator acc;
            for (std::size_t k = 0; k < K; ++k)
                if (lq[k] != neg_inf && lp[j * K + k] != neg_inf) acc.add(lq[k] + lp[j * K + k]);
            ln_pbar[j] = acc.value();
        }
        std::vector<double> d(K, 0.0);
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t j = 0; j < J; ++j) {
                double v = lp[j * K + k];
                if (v == neg_inf) continue;
                d[k] += std::exp(lw[j] + v) * (v - ln_pbar[j]);
            }
        double info = 0.0, d_max = neg_inf;
        for (std::size_t k = 0; k < K; ++k) {
            if (q[k] > 0.0) info += q[k] * d[k];
            d_max = std::max(d_max, d[k]);
        }
        if (d_max - info < 1e-12) return info;
        double norm = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            q.q[k] = q[k] > 0.0 ? q[k] * std::exp(d[k] - d_max) : 0.0;
            norm += q.q[k];
        }
        for (std::size_t k = 0; k < K; ++k) q.q[k] /= norm;
    }
    return capacity(ch, q);
}

}  // namespace spb
