#pragma once

#include <cstddef>
#include <vector>

#include "spb/channel.hpp"
#include "spb/code_spec.hpp"

namespace spb {

// Per-input statistics of the composite measure beta underlying the
// Valembois-Fossorier bound at a fixed tilting parameter rho. beta mixes
// the channel law with the rho-tilted output measure; nu1 and nu2 are the
// mean and variance of ln(beta/P) under the beta-weighted output
// distribution of each input.
struct VfTerms {
    std::vector<double> log_beta;  // output-major, [j * inputs + k]
    std::vector<double> nu1;       // per input
    std::vector<double> nu2;       // per input, nonnegative
    InputDistribution q;           // input distribution attaining E0(rho)
};

VfTerms vf_terms(const Channel& ch, double rho);

// Sphere-packing lower bound with finite-length backoff terms driven by
// the nu statistics and a composition-counting term over the input
// alphabet. Requires a finite input alphabet. `alphabet_size` overrides
// the channel's input count in the composition term.
BoundResult vf_bound(const Channel& ch, const CodeSpec& spec,
                     std::size_t alphabet_size);
BoundResult vf_bound(const Channel& ch, const CodeSpec& spec);

}  // namespace spb
