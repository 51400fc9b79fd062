#pragma once

// Code parameters and the common result record returned by every bound.

#include <cmath>
#include <stdexcept>
#include <string>

namespace spb {

struct CodeSpec {
    double n = 0;                  // block length, channel uses
    double rate_nats = 0;          // ln(M/L)/N
    double list_size = 1;          // L
    double expurgation_alpha = 0.5;

    void validate() const {
        if (!(n >= 1)) throw std::invalid_argument("block length must be >= 1");
        if (!(rate_nats > 0)) throw std::invalid_argument("rate must be positive");
        if (!(list_size >= 1)) throw std::invalid_argument("list size must be >= 1");
        if (!(expurgation_alpha > 0 && expurgation_alpha < 1))
            throw std::invalid_argument("expurgation fraction must lie in (0,1)");
    }
};

enum class BoundKind { Sp59, Sp67, Vf, Isp, RandomCoding, CapacityLimit };

const char* bound_name(BoundKind k);

struct BoundResult {
    double log_pe = 0.0;   // natural-log bound on error probability
    BoundKind kind = BoundKind::Isp;
    bool vacuous = false;  // no information at these parameters
    std::string reason;    // set when vacuous
    std::string caveat;    // set when the result carries an unverified assumption

    // optimizing internal parameters where applicable
    double x_star = std::nan("");
    double s_star = std::nan("");
    double rho_star = std::nan("");

    // solver diagnostics
    double root_residual = 0.0;
    int root_iterations = 0;
};

}  // namespace spb
