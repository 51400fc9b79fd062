#pragma once

// Two-measure error bounds: for any binary hypothesis test between P1
// and P2, at least one error probability exceeds the corresponding
// tilted-cumulant lower bound. The x-parameterized form trades a smaller
// prefactor for a slower exponent and is the seed of the ISP machinery.

#include <span>

#include "spb/exponents.hpp"

namespace spb {

struct PairwiseBounds {
    double log_lower_1 = 0.0;  // on P1's error probability
    double log_lower_2 = 0.0;  // on the F-measure of the complementary region
    double mu = 0.0;
    double mu_prime = 0.0;
    double mu_second = 0.0;
};

// mu(s) = ln sum_y P1(y)^(1-s) P2(y)^s with exact tilted mean/variance
// derivatives (the measures are fixed, so no envelope terms appear).
MuTriple mu_pair(std::span<const double> p1, std::span<const double> p2, double s);

// Log-domain lower bounds with prefactor ln(1/2 - 1/(4 x^2)), x > sqrt(2)/2.
PairwiseBounds pairwise_lower_bounds(std::span<const double> p1, std::span<const double> p2,
                                     double s, double x);

// exp(mu - s mu') and exp(mu + (1-s) mu'): upper bounds attained by an
// appropriate choice of decision regions.
std::pair<double, double> pairwise_upper_bounds(std::span<const double> p1,
                                                std::span<const double> p2, double s);

// ln(1/2 - 1/(4 x^2)) without cancellation for x near sqrt(2)/2.
double log_pairwise_prefactor(double x);

}  // namespace spb
