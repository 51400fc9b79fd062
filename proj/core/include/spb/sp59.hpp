#pragma once

#include <cstddef>

#include "spb/code_spec.hpp"

namespace spb {

// Geometry of the equal-solid-angle cone used by the sphere-packing
// bound for the unconstrained-input Gaussian channel: the half angle
// whose spherical cap covers an exp(-n R) fraction of the sphere.
struct ConeGeometry {
    double half_angle = 0.0;    // radians
    double log_fraction = 0.0;  // attained ln of the cap fraction
    double residual = 0.0;      // |log_fraction + n R|
};

ConeGeometry cone_half_angle(std::size_t n, double rate_nats);

// Lower bound on the block error probability of any code of rate
// `rate_nats` (nats per dimension) over n uses of a Gaussian channel at
// per-dimension SNR `es_over_n0`: the probability that noise carries the
// signal outside the cone of half angle cone_half_angle(n, rate_nats).
BoundResult sp59_bound(std::size_t n, double rate_nats, double es_over_n0);

}  // namespace spb
