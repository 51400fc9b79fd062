#pragma once

// The Gallager E0 function, the sphere-packing exponent, the tilting
// measure f_s and the function mu_0(s, f_s) with its first two s
// derivatives, plus the random-coding upper bound. These carry the whole
// weight of the bound modules.

#include <vector>

#include "spb/channel.hpp"
#include "spb/code_spec.hpp"

namespace spb {

struct ExponentValue {
    double value = 0.0;  // nats; +inf represented by diverges flag
    bool diverges = false;
    double optimizer_rho = 0.0;
    InputDistribution optimizer_q;
};

struct TiltedMeasure {
    std::vector<double> log_f;  // per output / quadrature node
    double s = 0.0;
};

struct MuTriple {
    double mu0 = 0.0;         // ln sum_j P(j|k)^(1-s) f_s(j)^s, input independent
    double mu0_prime = 0.0;   // d mu0 / ds along f = f_s
    double mu0_second = 0.0;  // d^2 mu0 / ds^2 along f = f_s
};

// E_0(rho, q) = -ln sum_j [sum_k q_k P(j|k)^(1/(1+rho))]^(1+rho).
double e0(const Channel& ch, double rho, const InputDistribution& q);
// E_0(rho) at the maximizing input distribution.
double e0(const Channel& ch, double rho);

// Input distribution maximizing E_0(rho, .). Uniform for symmetric
// channels; damped multiplicative fixed point otherwise.
InputDistribution optimal_q(const Channel& ch, double rho);

// E_sp(R) = sup_{rho >= 0} (E_0(rho) - rho R).
ExponentValue esp(const Channel& ch, double rate_nats);

// ln P_e <= -N max_{0<=rho<=1} (E_0(rho) - rho R).
BoundResult random_coding_bound(const Channel& ch, double n, double rate_nats);

// f_s(j) proportional to alpha_{j,s}^(1/(1-s)),
// alpha_{j,s} = sum_k q_{k,s} P(j|k)^(1-s), q_s optimal at rho = s/(1-s).
TiltedMeasure tilted_measure(const Channel& ch, double s);

// mu_0 and its total s-derivatives along s -> mu_0(s, f_s). mu0 itself
// equals -(1-s) E_0(s/(1-s)); both evaluation paths agree to roundoff.
MuTriple mu0_with_derivatives(const Channel& ch, double s);

// Extended form: also reports the fixed-measure part of mu0_second (the
// tilted variance with f frozen at f_s), which the VF bound's nu terms
// are built from.
struct MuParts {
    MuTriple total;
    double fixed_f_second = 0.0;  // sum_k q_k Var[ln(f_s/P)] under the tilted weights
    double ln_z = 0.0;            // log normalizer of alpha^(1/(1-s))
};
MuParts mu0_parts(const Channel& ch, double s);

// Mutual information at the capacity-achieving input.
double capacity(const Channel& ch);
double capacity(const Channel& ch, const InputDistribution& q);

}  // namespace spb
