#include "spb/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "spb/exponents.hpp"
#include "spb/isp.hpp"
#include "spb/logspace.hpp"
#include "spb/sp59.hpp"
#include "spb/sp67.hpp"
#include "spb/vf.hpp"

namespace spb {

namespace {

constexpr double ln2 = 0.6931471805599453;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

const char* bound_name(BoundKind k) {
    switch (k) {
        case BoundKind::Sp59: return "sp59";
        case BoundKind::Sp67: return "sp67";
        case BoundKind::Vf: return "vf";
        case BoundKind::Isp: return "isp";
        case BoundKind::RandomCoding: return "rc";
        case BoundKind::CapacityLimit: return "clb";
    }
    throw std::invalid_argument("unknown bound kind");
}

ModulationInfo modulation_info(ChannelFamily family) {
    switch (family) {
        case ChannelFamily::Bpsk: return {1, 2};
        case ChannelFamily::Qpsk: return {2, 4};
        case ChannelFamily::Psk8: return {2, 8};
    }
    throw std::invalid_argument("unknown channel family");
}

const char* family_name(ChannelFamily family) {
    switch (family) {
        case ChannelFamily::Bpsk: return "bpsk-awgn";
        case ChannelFamily::Qpsk: return "qpsk-awgn";
        case ChannelFamily::Psk8: return "8psk-awgn";
    }
    throw std::invalid_argument("unknown channel family");
}

Channel make_awgn_channel(ChannelFamily family, double es_over_n0,
                          int quad_order) {
    return Channel(
        make_mpsk_awgn(modulation_info(family).points, es_over_n0, quad_order));
}

double es_db_from_eb_db(double eb_db, double rate_bits) {
    if (!(rate_bits > 0)) throw std::invalid_argument("rate must be positive");
    return eb_db + 10.0 * std::log10(rate_bits);
}

double eb_db_from_es_db(double es_db, double rate_bits) {
    if (!(rate_bits > 0)) throw std::invalid_argument("rate must be positive");
    return es_db - 10.0 * std::log10(rate_bits);
}

double bound_log_pe(BoundKind kind, ChannelFamily family, double es_over_n0,
                    double n, double rate_bits) {
    if (!(n >= 1)) throw std::invalid_argument("block length must be >= 1");
    const double rate_nats = rate_bits * ln2;

    if (kind == BoundKind::Sp59) {
        const ModulationInfo mod = modulation_info(family);
        const double d = static_cast<double>(mod.dimensions);
        const auto dims = static_cast<std::size_t>(std::llround(n * d));
        return sp59_bound(dims, rate_nats / d, es_over_n0 / d).log_pe;
    }
    if (kind == BoundKind::CapacityLimit) {
        const Channel ch = make_awgn_channel(family, es_over_n0);
        return capacity(ch) < rate_nats ? 0.0 : neg_inf;
    }

    const Channel ch = make_awgn_channel(family, es_over_n0);
    CodeSpec spec;
    spec.n = n;
    spec.rate_nats = rate_nats;
    switch (kind) {
        case BoundKind::Sp67: return sp67_bound(ch, spec).log_pe;
        case BoundKind::Vf: return vf_bound(ch, spec).log_pe;
        case BoundKind::Isp: return isp_bound(ch, spec).log_pe;
        case BoundKind::RandomCoding:
            return random_coding_bound(ch, n, rate_nats).log_pe;
        default: break;
    }
    throw std::invalid_argument("unsupported bound kind");
}

ThresholdResult snr_threshold(const ThresholdQuery& query) {
    if (!(query.target_pe > 0 && query.target_pe < 1))
        throw std::invalid_argument("target error probability must lie in (0,1)");
    if (!(query.rate_bits > 0))
        throw std::invalid_argument("rate must be positive");

    if (query.kind == BoundKind::CapacityLimit)
        return clb_threshold(query.family, query.rate_bits);

    const double ln_target = std::log(query.target_pe);
    auto ln_pe = [&](double es_db) {
        return bound_log_pe(query.kind, query.family, db_to_linear(es_db),
                            query.n, query.rate_bits);
    };

    ThresholdResult out;
    double lo = -5.0, hi = 30.0;
    // the bound decreases with SNR; the threshold is where it meets the target
    if (ln_pe(lo) < ln_target || ln_pe(hi) > ln_target) return out;
    out.iterations = 2;
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        ++out.iterations;
        if (ln_pe(mid) > ln_target)
            lo = mid;
        else
            hi = mid;
    }
    out.found = true;
    out.es_no_db = 0.5 * (lo + hi);
    out.eb_no_db = eb_db_from_es_db(out.es_no_db, query.rate_bits);
    out.residual = std::fabs(ln_pe(out.es_no_db) - ln_target);
    return out;
}

ThresholdResult clb_threshold(ChannelFamily family, double rate_bits) {
    if (!(rate_bits > 0)) throw std::invalid_argument("rate must be positive");
    const double rate_nats = rate_bits * ln2;
    auto cap = [&](double es_db) {
        return capacity(make_awgn_channel(family, db_to_linear(es_db)));
    };

    ThresholdResult out;
    double lo = -5.0, hi = 30.0;
    if (cap(lo) > rate_nats || cap(hi) < rate_nats) return out;
    out.iterations = 2;
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        ++out.iterations;
        if (cap(mid) < rate_nats)
            lo = mid;
        else
            hi = mid;
    }
    out.found = true;
    out.es_no_db = 0.5 * (lo + hi);
    out.eb_no_db = eb_db_from_es_db(out.es_no_db, rate_bits);
    out.residual = std::fabs(cap(out.es_no_db) - rate_nats);
    return out;
}

RegionMap crossover_length(BoundKind first, BoundKind second,
                           ChannelFamily family, double rate_bits,
                           double target_pe, std::uint64_t n_lo,
                           std::uint64_t n_hi) {
    if (n_lo < 1 || n_hi <= n_lo)
        throw std::invalid_argument("block length range is empty");

    RegionMap out;
    out.first = first;
    out.second = second;
    out.n_lo = n_lo;
    out.n_hi = n_hi;

    const double ln_target = std::log(target_pe);
    // first dominates at n iff, at the SNR where `second` meets the
    // target, `first` still sits at or above it; this needs one solve of
    // the cheaper bound plus a single evaluation of the expensive one.
    auto first_dominates = [&](std::uint64_t n) {
        ThresholdQuery q;
        q.kind = second;
        q.family = family;
        q.n = static_cast<double>(n);
        q.rate_bits = rate_bits;
        q.target_pe = target_pe;
        const ThresholdResult thr = snr_threshold(q);
        if (!thr.found)
            throw std::runtime_error("reference bound threshold not bracketed "
                                     "in [-5, 30] dB");
        return bound_log_pe(first, family, db_to_linear(thr.es_no_db),
                            static_cast<double>(n), rate_bits) >= ln_target;
    };

    if (!first_dominates(n_hi)) return out;
    out.crossover_found = true;
    if (first_dominates(n_lo)) {
        out.n_star = n_lo;
        return out;
    }
    std::uint64_t lo = n_lo, hi = n_hi;
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (first_dominates(mid))
            hi = mid;
        else
            lo = mid;
    }
    out.n_star = hi;
    return out;
}

}  // namespace spb
