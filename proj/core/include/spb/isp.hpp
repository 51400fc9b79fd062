#pragma once

#include "spb/channel.hpp"
#include "spb/code_spec.hpp"

namespace spb {

// Validity report for the improved sphere-packing bound on channels
// without symmetry: the optimizing input distribution must keep every
// input in its support across the tilting range, otherwise the per-input
// tilted statistics disagree and the derivation does not apply.
struct SupportReport {
    bool pass = true;
    double min_component = 1.0;  // smallest optimizing q component seen
    double worst_s = 0.0;        // tilting parameter where it occurs
};

SupportReport support_condition(const Channel& ch);

// Root of the implicit rate equation at a fixed slope parameter x.
struct IspRoot {
    bool found = false;
    double s_x = 0.0;
    double rho_x = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

IspRoot isp_rho_x(const Channel& ch, const CodeSpec& spec, double x);

// Improved sphere-packing lower bound on the block error probability.
// Valid for list decoding (spec.list_size) and tightened by splitting the
// error event at spec.expurgation_alpha.
BoundResult isp_bound(const Channel& ch, const CodeSpec& spec);

}  // namespace spb
