#pragma once

#include <cstdint>

#include "spb/channel.hpp"
#include "spb/code_spec.hpp"

namespace spb {

// Coherently modulated Gaussian channel families used by the sweep and
// threshold machinery. BPSK occupies one signal-space dimension per
// channel use, the PSK rings occupy two.
enum class ChannelFamily { Bpsk, Qpsk, Psk8 };

struct ModulationInfo {
    int dimensions = 1;  // signal-space dimensions per channel use
    int points = 2;      // constellation size
};

ModulationInfo modulation_info(ChannelFamily family);
const char* family_name(ChannelFamily family);

Channel make_awgn_channel(ChannelFamily family, double es_over_n0,
                          int quad_order = 96);

// dB conversions between per-symbol and per-information-bit SNR at a
// given code rate in bits per channel use.
double es_db_from_eb_db(double eb_db, double rate_bits);
double eb_db_from_es_db(double es_db, double rate_bits);

// One bound evaluation on a Gaussian family, handling the per-dimension
// mapping for the cone-packing bound. `rate_bits` is per channel use.
// The capacity-limit kind returns the indicator form: 0 when capacity is
// below the rate, -inf otherwise.
double bound_log_pe(BoundKind kind, ChannelFamily family, double es_over_n0,
                    double n, double rate_bits);

struct ThresholdQuery {
    BoundKind kind = BoundKind::Isp;
    ChannelFamily family = ChannelFamily::Bpsk;
    double n = 0;            // block length in channel uses
    double rate_bits = 0;    // information bits per channel use
    double target_pe = 0.0;  // block error probability
};

struct ThresholdResult {
    bool found = false;
    double es_no_db = 0.0;
    double eb_no_db = 0.0;
    double residual = 0.0;  // |ln bound - ln target| at the returned SNR
    int iterations = 0;
};

// Smallest SNR at which the bound no longer precludes the target error
// probability. Bisection over [-5, 30] dB Es/N0 to 1e-3 dB.
ThresholdResult snr_threshold(const ThresholdQuery& query);

// SNR at which channel capacity equals the code rate; the threshold of
// the capacity-limit bound, independent of block length.
ThresholdResult clb_threshold(ChannelFamily family, double rate_bits);

// Dominance regions in block length for an ordered pair of bounds at a
// fixed rate and target error probability: n_star is the smallest block
// length at which `first` demands at least as much SNR as `second`.
struct RegionMap {
    BoundKind first = BoundKind::Isp;
    BoundKind second = BoundKind::Sp59;
    std::uint64_t n_lo = 0, n_hi = 0;  // search range examined
    bool crossover_found = false;
    std::uint64_t n_star = 0;  // valid when crossover_found
};

RegionMap crossover_length(BoundKind first, BoundKind second,
                           ChannelFamily family, double rate_bits,
                           double target_pe, std::uint64_t n_lo = 16,
                           std::uint64_t n_hi = 1000000);

}  // namespace spb
