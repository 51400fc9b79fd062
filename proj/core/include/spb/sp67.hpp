#pragma once

#include "spb/channel.hpp"
#include "spb/code_spec.hpp"

namespace spb {

// Classical sphere-packing lower bound on the block error probability of
// a code over a discrete memoryless channel. The finite-length backoff
// terms depend on the input alphabet size and the smallest nonzero
// transition probability, which restricts this bound to discrete
// channels; continuous-output channels must be quantized first.
BoundResult sp67_bound(const Channel& ch, const CodeSpec& spec);

}  // namespace spb
