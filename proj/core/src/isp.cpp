#include "spb/isp.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "spb/exponents.hpp"
#include "tilt_solver.hpp"

namespace spb {

namespace {

// ln(2 - 1/x^2), the x-dependent piece shared by both backoff terms.
double ln_gap(double x) { return std::log(2.0 - 1.0 / (x * x)); }

// Shared state for the per-x solves inside one bound evaluation. The
// tilted statistics depend only on s, so they are memoized across the
// x search; bisection revisits the same midpoints often.
struct Engine {
    const Channel& ch;
    double n;
    double tgt_const;  // ln 4 + ln(1/alpha)
    double exp_const;  // ln 4 + ln(1/(1-alpha))
    double rate;
    std::map<double, MuParts> cache;

    const MuParts& at(double s) {
        auto it = cache.find(s);
        if (it == cache.end()) it = cache.emplace(s, mu0_parts(ch, s)).first;
        return it->second;
    }

    detail::SRoot solve(double x, double* tgt_out) {
        const double tgt = rate - (tgt_const - ln_gap(x)) / n;
        *tgt_out = tgt;
        if (tgt <= 0.0) return {};
        auto h = [&](double s) {
            const MuTriple& m = at(s).total;
            return -m.mu0 - (1.0 - s) * m.mu0_prime +
                   (1.0 - s) * x * std::sqrt(2.0 * m.mu0_second / n) - tgt;
        };
        return detail::solve_s_root(h, tgt);
    }

    std::optional<double> exponent(double x, detail::SRoot* root_out) {
        double tgt = 0.0;
        const detail::SRoot root = solve(x, &tgt);
        if (!root.found) return std::nullopt;
        if (root_out) *root_out = root;
        const MuTriple& m = at(root.s).total;
        const double s = root.s;
        const double rho = s / (1.0 - s);
        const double e0v = -m.mu0 / (1.0 - s);
        return e0v - rho * tgt + s * x * std::sqrt(8.0 * m.mu0_second / n) +
               (exp_const - ln_gap(x)) / n;
    }
};

Engine make_engine(const Channel& ch, const CodeSpec& spec) {
    const double a = spec.expurgation_alpha;
    return Engine{ch,
                  static_cast<double>(spec.n),
                  std::log(4.0) - std::log(a),
                  std::log(4.0) - std::log1p(-a),
                  spec.rate_nats,
                  {}};
}

}  // namespace

SupportReport support_condition(const Channel& ch) {
    SupportReport out;
    if (ch.symmetric()) {
        out.min_component = 1.0 / static_cast<double>(ch.input_count());
        return out;
    }
    for (int i = 1; i < 100; ++i) {
        const double s = i / 100.0;
        const InputDistribution q = optimal_q(ch, s / (1.0 - s));
        for (std::size_t k = 0; k < q.size(); ++k)
            if (q[k] < out.min_component) {
                out.min_component = q[k];
                out.worst_s = s;
            }
    }
    out.pass = out.min_component > 1e-6;
    return out;
}

IspRoot isp_rho_x(const Channel& ch, const CodeSpec& spec, double x) {
    spec.validate();
    if (!(x > std::sqrt(0.5)))
        throw std::invalid_argument("slope parameter must exceed sqrt(1/2)");
    Engine eng = make_engine(ch, spec);
    double tgt = 0.0;
    const detail::SRoot root = eng.solve(x, &tgt);
    IspRoot out;
    out.found = root.found;
    if (root.found) {
        out.s_x = root.s;
        out.rho_x = root.s / (1.0 - root.s);
        out.residual = root.residual;
        out.iterations = root.iterations;
    }
    return out;
}

BoundResult isp_bound(const Channel& ch, const CodeSpec& spec) {
    spec.validate();
    if (!ch.symmetric()) {
        const SupportReport rep = support_condition(ch);
        if (!rep.pass) {
            std::ostringstream msg;
            msg << "input support condition fails (component "
                << rep.min_component << " at s = " << rep.worst_s
                << "); the improved bound does not apply here, use the VF bound";
            throw std::runtime_error(msg.str());
        }
    }

    Engine eng = make_engine(ch, spec);
    detail::SRoot last_root;
    auto exponent_at = [&](double x) { return eng.exponent(x, &last_root); };

    BoundResult out;
    out.kind = BoundKind::Isp;
    const detail::XOptimum opt = detail::minimize_over_x(exponent_at);
    if (!opt.found) {
        out.vacuous = true;
        out.reason = "implicit rate equation has no root for any slope";
        out.log_pe = 0.0;
        return out;
    }
    exponent_at(opt.x);  // refresh diagnostics at the optimizer
    out.log_pe = std::min(0.0, -static_cast<double>(spec.n) * opt.value);
    out.x_star = opt.x;
    out.s_star = last_root.s;
    out.rho_star = last_root.s / (1.0 - last_root.s);
    out.root_residual = last_root.residual;
    out.root_iterations = last_root.iterations;
    return out;
}

}  // namespace spb
