#pragma once

// Memoryless channel models. Two concrete families are supported: a
// finite transition matrix (DMC) and a finite input constellation with
// additive white Gaussian noise on a quadrature grid. The Channel view
// presents both to the numeric layers as one J x K table of log
// transition values plus per-output log integration weights (zero for
// a DMC), so every bound is written once.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "spb/quadrature.hpp"

namespace spb {

struct InputDistribution {
    std::vector<double> q;

    std::size_t size() const { return q.size(); }
    double operator[](std::size_t k) const { return q[k]; }
    // entries >= 0 and sum within 1e-12 of one
    void validate() const;
};

InputDistribution uniform_input(std::size_t k);

struct DiscreteChannel {
    std::size_t inputs = 0;   // K
    std::size_t outputs = 0;  // J
    // transition[k * outputs + j] = P(j|k); each row sums to 1 within 1e-12
    std::vector<double> transition;
    std::vector<std::string> input_labels;
    std::vector<std::string> output_labels;
    bool symmetric = false;  // uniform input optimal and per-input tilted moments equal

    double p_min() const;  // smallest nonzero transition probability
    void validate() const;
};

struct ContinuousChannel {
    std::size_t inputs = 0;          // K constellation points
    int dim = 1;                     // output dimensions
    std::vector<double> constellation;  // inputs * dim, unit average energy
    double es_over_n0 = 0.0;         // linear symbol SNR
    double noise_sigma2 = 0.0;       // per-dimension variance, 1/(2 es_over_n0)
    QuadratureGrid quadrature;
    bool symmetric = true;

    void validate() const;
};

// Unified evaluation view. Immutable after construction; all methods are
// const and safe for concurrent use.
class Channel {
public:
    Channel(DiscreteChannel d);
    Channel(ContinuousChannel c);

    std::size_t input_count() const { return k_; }
    std::size_t output_count() const { return j_; }
    bool continuous() const { return cont_ != nullptr; }
    bool symmetric() const { return symmetric_; }

    // J x K table, entry [j * K + k] = ln P(j|k) (log density for
    // continuous channels); -inf marks zero transitions.
    const double* log_p() const { return ln_p_.data(); }
    // J log integration weights; all zero for a DMC.
    const double* log_w() const { return log_w_.data(); }

    const DiscreteChannel* discrete() const { return disc_.get(); }
    const ContinuousChannel* gaussian() const { return cont_.get(); }

private:
    std::size_t k_ = 0, j_ = 0;
    bool symmetric_ = false;
    std::vector<double> ln_p_;
    std::vector<double> log_w_;
    std::shared_ptr<const DiscreteChannel> disc_;
    std::shared_ptr<const ContinuousChannel> cont_;
};

// Binary symmetric channel with crossover probability p.
DiscreteChannel make_bsc(double p);

// General DMC from a K x J matrix (row-major); rows must sum to 1.
DiscreteChannel make_dmc(std::size_t inputs, std::size_t outputs,
                         std::vector<double> transition);

// M-ary PSK constellation (unit energy) over AWGN at the given linear
// Es/N0. BPSK collapses to a 1-D output; all other M use 2 dimensions.
// quad_order is the minimum node count per dimension; it is raised
// automatically when the noise is narrow relative to the grid box.
ContinuousChannel make_mpsk_awgn(int m, double es_over_n0, int quad_order = 96);

// ln P(j|k) / ln p(y_j|k) by output index.
double log_transition(const Channel& ch, std::size_t output, std::size_t input);
// ln p(y|k) at an arbitrary output point (continuous channels only).
double log_transition(const Channel& ch, const double* y, std::size_t input);

// Uniform-bin quantization of a continuous channel to a DMC with
// `levels` bins per output dimension; outermost bins absorb the tails so
// rows sum to one exactly.
DiscreteChannel quantize(const ContinuousChannel& ch, int levels);

}  // namespace spb
