// End-to-end acceptance battery. Each check pins an operating point and a
// tolerance; the run prints one line per check and fails if any line fails.
// Windows follow the published comparison study this library reproduces.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spb/analysis.hpp"
#include "spb/channel.hpp"
#include "spb/exponents.hpp"
#include "spb/isp.hpp"
#include "spb/logspace.hpp"
#include "spb/pairwise.hpp"
#include "spb/sp59.hpp"
#include "spb/sp67.hpp"
#include "spb/vf.hpp"

using namespace spb;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double thr(BoundKind k, ChannelFamily fam, double n, double rb, double pe) {
    ThresholdQuery q;
    q.kind = k;
    q.family = fam;
    q.n = n;
    q.rate_bits = rb;
    q.target_pe = pe;
    const ThresholdResult r = snr_threshold(q);
    if (!r.found) throw std::runtime_error("threshold not bracketed");
    return r.eb_no_db;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string fmt1(const char* pattern, double a) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

// 01: threshold gaps between the improved, composite, and cone bounds at
// the n=500 binary benchmark.
Outcome check_threshold_gaps() {
    const auto t0 = Clock::now();
    const double isp = thr(BoundKind::Isp, ChannelFamily::Bpsk, 500, 0.8, 1e-5);
    const double vf = thr(BoundKind::Vf, ChannelFamily::Bpsk, 500, 0.8, 1e-5);
    const double sp = thr(BoundKind::Sp59, ChannelFamily::Bpsk, 500, 0.8, 1e-5);
    const double secs = seconds_since(t0);
    const double gap_cone = isp - sp;   // window 0.20 +- 0.05 dB
    const double gap_comp = isp - vf;   // window 0.30 +- 0.05 dB
    Outcome o;
    o.pass = within(gap_cone, 0.15, 0.25) && within(gap_comp, 0.25, 0.35) &&
             secs < 30.0;
    std::ostringstream d;
    d.precision(4);
    d << std::fixed << "isp-sp59 = " << gap_cone
      << " dB (want 0.20+-0.05), isp-vf = " << gap_comp
      << " dB (want 0.30+-0.05), " << fmt1("%.1f s (budget 30 s)", secs);
    o.detail = d.str();
    return o;
}

// 02: the error probability at which the n=500 improved-bound threshold
// meets the length-independent capacity threshold.
Outcome check_capacity_crossing() {
    const double clb = clb_threshold(ChannelFamily::Bpsk, 0.8).eb_no_db;
    auto meets = [&](double ln_pe) {
        return thr(BoundKind::Isp, ChannelFamily::Bpsk, 500, 0.8,
                   std::exp(ln_pe)) <= clb;
    };
    double lo = std::log(1e-6), hi = std::log(0.3);
    Outcome o;
    if (meets(lo) || !meets(hi)) {
        o.detail = "crossing not bracketed in [1e-6, 0.3]";
        return o;
    }
    for (int i = 0; i < 30; ++i) {
        const double mid = 0.5 * (lo + hi);
        (meets(mid) ? hi : lo) = mid;
    }
    const double pe_star = std::exp(0.5 * (lo + hi));
    o.pass = within(pe_star, 1.5e-3, 6e-3);
    o.detail = fmt1("thresholds meet at pe = %.3e", pe_star) +
               " (want within a factor 2 of 3e-3)";
    return o;
}

// 03: two-dimensional constellations at published operating points.
Outcome check_psk_operating_points() {
    struct Point {
        ChannelFamily fam;
        double n, rb, lo, hi;  // window on isp - vf
        const char* name;
    };
    const Point pts[] = {
        {ChannelFamily::Qpsk, 2790, 1.467, 0.05, 0.15, "qpsk"},
        {ChannelFamily::Psk8, 1860, 2.2, 0.15, 0.25, "8psk"},
    };
    Outcome o;
    o.pass = true;
    std::ostringstream d;
    d.precision(4);
    d << std::fixed;
    for (const Point& p : pts) {
        const double isp = thr(BoundKind::Isp, p.fam, p.n, p.rb, 1e-4);
        const double vf = thr(BoundKind::Vf, p.fam, p.n, p.rb, 1e-4);
        const double rc = thr(BoundKind::RandomCoding, p.fam, p.n, p.rb, 1e-4);
        const double gap_iv = isp - vf;
        const double gap_ri = rc - isp;
        const bool ok = within(gap_iv, p.lo, p.hi) && gap_ri > 0.0 && gap_ri <= 0.45;
        o.pass = o.pass && ok;
        d << p.name << ": isp-vf = " << gap_iv << " (want " << p.lo << ".."
          << p.hi << "), rc-isp = " << gap_ri << " (want <= 0.45); ";
    }
    o.detail = d.str();
    return o;
}

// 04: block lengths where the improved and composite bounds overtake the
// cone bound, at two rates.
Outcome check_crossover_lengths() {
    const auto t0 = Clock::now();
    struct Case {
        double rb;
        BoundKind first;
        std::uint64_t center;  // +- 5%
        const char* name;
    };
    const Case cases[] = {
        {0.75, BoundKind::Isp, 617, "isp@0.75"},
        {0.75, BoundKind::Vf, 870, "vf@0.75"},
        {0.80, BoundKind::Isp, 350, "isp@0.80"},
        {0.80, BoundKind::Vf, 550, "vf@0.80"},
    };
    Outcome o;
    o.pass = true;
    std::ostringstream d;
    for (const Case& c : cases) {
        const RegionMap m = crossover_length(c.first, BoundKind::Sp59,
                                             ChannelFamily::Bpsk, c.rb, 1e-6);
        const double lo = 0.95 * static_cast<double>(c.center);
        const double hi = 1.05 * static_cast<double>(c.center);
        const bool ok =
            m.crossover_found && within(static_cast<double>(m.n_star), lo, hi);
        o.pass = o.pass && ok;
        d << c.name << ": n* = ";
        if (m.crossover_found) d << m.n_star;
        else d << "none";
        d << " (want " << c.center << "+-5%); ";
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < 600.0;
    d << fmt1("%.0f s (budget 600 s)", secs);
    o.detail = d.str();
    return o;
}

// 05: a QPSK code is two binary uses; thresholds must agree at equal Eb/N0.
Outcome check_serialization() {
    const double ns[10] = {200, 300, 400, 500, 600, 800, 1000, 1200, 1600, 2000};
    const double rs[10] = {0.6, 0.7, 0.8, 0.9, 0.75, 0.85, 0.65, 0.8, 0.7, 0.9};
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double quad =
            thr(BoundKind::Isp, ChannelFamily::Qpsk, ns[i] / 2, 2 * rs[i], 1e-4);
        const double bin = thr(BoundKind::Isp, ChannelFamily::Bpsk, ns[i], rs[i], 1e-4);
        worst = std::max(worst, std::fabs(quad - bin));
    }
    Outcome o;
    o.pass = worst <= 0.01;
    o.detail = fmt1("worst threshold disagreement over 10 pairs = %.4f dB", worst) +
               " (want <= 0.01)";
    return o;
}

// 06: converse bounds are ordered among themselves and sandwiched by the
// achievability bound across a parameter grid.
Outcome check_ordering() {
    struct Cell { Channel ch; bool discrete; };
    std::vector<Cell> cells;
    cells.push_back({Channel(make_bsc(0.1)), true});
    cells.push_back({make_awgn_channel(ChannelFamily::Qpsk, 1.0), false});
    cells.push_back({make_awgn_channel(ChannelFamily::Psk8, 3.0), false});

    int compared = 0, violations = 0;
    for (const Cell& cell : cells) {
        const double cap = capacity(cell.ch);
        for (double n : {100.0, 500.0, 2000.0}) {
            for (double frac : {0.35, 0.6, 0.85}) {
                CodeSpec spec;
                spec.n = n;
                spec.rate_nats = frac * cap;
                const BoundResult isp = isp_bound(cell.ch, spec);
                const BoundResult vf = vf_bound(cell.ch, spec);
                const BoundResult rc =
                    random_coding_bound(cell.ch, n, spec.rate_nats);
                if (!isp.vacuous && !vf.vacuous) {
                    ++compared;
                    if (isp.log_pe < vf.log_pe - 1e-9) ++violations;
                }
                if (!rc.vacuous && !isp.vacuous) {
                    ++compared;
                    if (isp.log_pe > rc.log_pe + 1e-9) ++violations;
                }
                if (cell.discrete) {
                    const BoundResult s67 = sp67_bound(cell.ch, spec);
                    if (!s67.vacuous && !vf.vacuous) {
                        ++compared;
                        if (vf.log_pe < s67.log_pe - 1e-9) ++violations;
                    }
                }
            }
        }
    }
    Outcome o;
    o.pass = violations == 0 && compared >= 20;
    o.detail = std::to_string(violations) + " ordering violations over " +
               std::to_string(compared) + " comparisons (want 0 over >= 20)";
    return o;
}

// 07: the tilted log-moment reproduces the Gallager function along
// s = rho/(1+rho).
Outcome check_moment_identity() {
    Channel bsc(make_bsc(0.1));
    Channel psk8 = make_awgn_channel(ChannelFamily::Psk8, 2.0);
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double s = 0.1 * i;
        const double rho = s / (1.0 - s);
        for (const Channel* ch : {&bsc, &psk8}) {
            const MuTriple m = mu0_with_derivatives(*ch, s);
            worst = std::max(worst, std::fabs(m.mu0 + (1.0 - s) * e0(*ch, rho)));
        }
    }
    Outcome o;
    o.pass = worst < 1e-8;
    o.detail = fmt1("max |mu0 + (1-s) E0| = %.2e (want < 1e-8)", worst);
    return o;
}

// 08: analytic derivatives of the tilted log-moment match central
// finite differences.
Outcome check_derivatives() {
    Channel bsc(make_bsc(0.07));
    Channel qpsk = make_awgn_channel(ChannelFamily::Qpsk, 1.3);
    const double h = 1e-5;
    double worst = 0.0;
    for (const Channel* ch : {&bsc, &qpsk}) {
        for (double s : {0.2, 0.5, 0.8}) {
            const MuTriple m = mu0_with_derivatives(*ch, s);
            const MuTriple lo = mu0_with_derivatives(*ch, s - h);
            const MuTriple hi = mu0_with_derivatives(*ch, s + h);
            const double fd1 = (hi.mu0 - lo.mu0) / (2.0 * h);
            const double fd2 = (hi.mu0_prime - lo.mu0_prime) / (2.0 * h);
            worst = std::max(worst, std::fabs(m.mu0_prime - fd1) /
                                        std::max(1.0, std::fabs(m.mu0_prime)));
            worst = std::max(worst, std::fabs(m.mu0_second - fd2) /
                                        std::max(1.0, std::fabs(m.mu0_second)));
        }
    }
    Outcome o;
    o.pass = worst < 1e-6;
    o.detail = fmt1("max relative derivative error = %.2e (want < 1e-6)", worst);
    return o;
}

// 09: the cone-escape integral is a probability; simulate it directly.
Outcome check_cone_monte_carlo() {
    struct Point { std::size_t n; double rate_bits, es; };
    const Point pts[] = {{10, 0.5, 1.1}, {20, 0.5, 0.9}};
    Outcome o;
    o.pass = true;
    std::ostringstream d;
    std::mt19937_64 rng(20260822);
    for (const Point& p : pts) {
        const double rate = p.rate_bits * std::log(2.0);
        const BoundResult r = sp59_bound(p.n, rate, p.es);
        const double prob = std::exp(r.log_pe);
        const ConeGeometry g = cone_half_angle(p.n, rate);
        const double cot = std::cos(g.half_angle) / std::sin(g.half_angle);
        const double c = std::sqrt(2.0 * static_cast<double>(p.n) * p.es);
        std::chi_squared_distribution<double> chi2(static_cast<double>(p.n - 1));
        std::normal_distribution<double> gauss(0.0, 1.0);
        const long samples = 100000000;
        long hits = 0;
        for (long i = 0; i < samples; ++i) {
            const double u = std::sqrt(chi2(rng));
            if (u * cot - gauss(rng) >= c) ++hits;
        }
        const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
        const double se =
            std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
        const double dev = std::fabs(p_hat - prob) / se;
        o.pass = o.pass && dev <= 3.0;
        d << "n=" << p.n << ": " << fmt1("%.2f", dev) << " SE off 1e8 samples; ";
    }
    // half-space reduction: cap fraction 1/2 collapses to a Gaussian tail
    double worst = 0.0;
    for (std::size_t n : {10u, 100u, 1000u}) {
        const double rate = std::log(2.0) / static_cast<double>(n);
        const double want = log_norm_tail(std::sqrt(2.0 * static_cast<double>(n)));
        const double got = sp59_bound(n, rate, 1.0).log_pe;
        worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
    }
    o.pass = o.pass && worst <= 1e-8;
    d << fmt1("half-space reduction off by %.1e (want <= 1e-8)", worst);
    o.detail = d.str();
    return o;
}

// 10: the two-measure disjunction survives every deterministic decision
// region on random distribution pairs.
Outcome check_pairwise_disjunction() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> jdist(2, 12);
    long checked = 0, broken = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int j = jdist(rng);
        std::vector<double> p1(j), p2(j);
        for (auto* p : {&p1, &p2}) {
            double s = 0.0;
            for (double& x : *p) { x = 0.05 + u(rng); s += x; }
            for (double& x : *p) x /= s;
        }
        for (double s : {0.25, 0.5, 0.75}) {
            for (double x : {0.9, 1.5, 3.0}) {
                const PairwiseBounds b = pairwise_lower_bounds(p1, p2, s, x);
                const double l1 = std::exp(b.log_lower_1);
                const double l2 = std::exp(b.log_lower_2);
                for (unsigned mask = 0; mask < (1u << j); ++mask) {
                    double miss1 = 0.0, hit2 = 0.0;
                    for (int k = 0; k < j; ++k) {
                        if (mask & (1u << k)) hit2 += p2[k];
                        else miss1 += p1[k];
                    }
                    ++checked;
                    if (miss1 < l1 - 1e-12 && hit2 < l2 - 1e-12) ++broken;
                }
            }
        }
    }
    Outcome o;
    o.pass = broken == 0;
    o.detail = std::to_string(broken) + " escapes over " +
               std::to_string(checked) + " decision regions (want 0)";
    return o;
}

// 11: finite-length machinery recovers the exponent on very long blocks,
// and the cone bound stays finite deep into the large-n regime.
Outcome check_asymptotics() {
    Channel ch(make_bsc(0.1));
    const double rate = 0.3;
    const ExponentValue ev = esp(ch, rate);
    CodeSpec spec;
    spec.n = 1e7;
    spec.rate_nats = rate;
    const BoundResult isp = isp_bound(ch, spec);
    const BoundResult vf = vf_bound(ch, spec);
    const double d_isp = std::fabs(-isp.log_pe / spec.n - ev.value);
    const double d_vf = std::fabs(-vf.log_pe / spec.n - ev.value);

    const double big1 = sp59_bound(10000, 0.8 * std::log(2.0), 1.41).log_pe;
    const double big2 = sp59_bound(2000000, 0.55 * std::log(2.0), 0.74).log_pe;
    const bool finite = std::isfinite(big1) && std::isfinite(big2) &&
                        big1 < -1.0 && big2 < -1.0;

    Outcome o;
    o.pass = d_isp <= 1e-3 && d_vf <= 1e-3 && finite;
    std::ostringstream d;
    d << fmt1("exponent gap at n=1e7: isp %.2e, ", d_isp)
      << fmt1("vf %.2e (want <= 1e-3); ", d_vf)
      << fmt1("cone bound at n=1e4: %.1f, ", big1)
      << fmt1("n=2e6: %.1f (finite)", big2);
    o.detail = d.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    struct Entry {
        int id;
        const char* name;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {1, "threshold gaps at the n=500 binary benchmark", check_threshold_gaps},
        {2, "capacity-threshold crossing probability", check_capacity_crossing},
        {3, "PSK operating points", check_psk_operating_points},
        {4, "crossover lengths against the cone bound", check_crossover_lengths},
        {5, "quadrature serialization onto the binary channel", check_serialization},
        {6, "bound ordering across the parameter grid", check_ordering},
        {7, "tilted log-moment identity", check_moment_identity},
        {8, "analytic derivatives vs finite differences", check_derivatives},
        {9, "cone escape integral vs Monte Carlo", check_cone_monte_carlo},
        {10, "pairwise disjunction over all decision regions", check_pairwise_disjunction},
        {11, "asymptotic consistency and large-n stability", check_asymptotics},
    };
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

    int failures = 0, ran = 0;
    for (const Entry& e : entries) {
        if (!pick.empty() && !pick.count(e.id)) continue;
        ++ran;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = e.fn();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        const double secs = seconds_since(t0);
        std::printf("[%s] %02d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL",
                    e.id, e.name, o.detail.c_str(), secs);
        if (!o.pass) ++failures;
    }
    std::printf("%d of %d checks passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
}
