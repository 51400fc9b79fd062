#include "spb/pairwise.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spb/logspace.hpp"

namespace spb {

MuTriple mu_pair(std::span<const double> p1, std::span<const double> p2, double s) {
    if (p1.size() != p2.size()) throw std::invalid_argument("measures live on different spaces");
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s must lie in (0,1)");
    const std::size_t n = p1.size();

    std::vector<double> lt(n, neg_inf);
    LogAccumulator acc;
    bool overlap = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (p1[i] > 0.0 && p2[i] > 0.0) {
            overlap = true;
            lt[i] = (1.0 - s) * std::log(p1[i]) + s * std::log(p2[i]);
            acc.add(lt[i]);
        }
    }
    if (!overlap) throw std::invalid_argument("measures have disjoint supports");
    const double mu = acc.value();

    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (lt[i] == neg_inf) continue;
        double w = std::exp(lt[i] - mu);
        mean += w * (std::log(p2[i]) - std::log(p1[i]));
    }
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (lt[i] == neg_inf) continue;
        double w = std::exp(lt[i] - mu);
        double d = std::log(p2[i]) - std::log(p1[i]) - mean;
        var += w * d * d;
    }
    return MuTriple{mu, mean, var};
}

double log_pairwise_prefactor(double x) {
    if (!(x > std::sqrt(0.5)))
        throw std::invalid_argument("prefactor needs x > sqrt(2)/2");
    // 1/2 - 1/(4x^2) = (x - sqrt(1/2))(x + sqrt(1/2)) / (2 x^2)
    const double r = std::sqrt(0.5);
    return std::log(x - r) + std::log(x + r) - std::log(2.0) - 2.0 * std::log(x);
}

PairwiseBounds pairwise_lower_bounds(std::span<const double> p1, std::span<const double> p2,
                                     double s, double x) {
    MuTriple m = mu_pair(p1, p2, s);
    const double pref = log_pairwise_prefactor(x);
    const double root = std::sqrt(2.0 * m.mu0_second);
    PairwiseBounds b;
    b.mu = m.mu0;
    b.mu_prime = m.mu0_prime;
    b.mu_second = m.mu0_second;
    b.log_lower_1 = pref + m.mu0 - s * m.mu0_prime - s * x * root;
    b.log_lower_2 = pref + m.mu0 + (1.0 - s) * m.mu0_prime - (1.0 - s) * x * root;
    return b;
}

std::pair<double, double> pairwise_upper_bounds(std::span<const double> p1,
                                                std::span<const double> p2, double s) {
    MuTriple m = mu_pair(p1, p2, s);
    return {m.mu0 - s * m.mu0_prime, m.mu0 + (1.0 - s) * m.mu0_prime};
}

}  // namespace spb
