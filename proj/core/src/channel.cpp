#include "spb/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spb/logspace.hpp"

namespace spb {

void InputDistribution::validate() const {
    if (q.empty()) throw std::invalid_argument("input distribution is empty");
    double sum = 0.0;
    for (double v : q) {
        if (!(v >= 0.0)) throw std::invalid_argument("input distribution has a negative entry");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("input distribution does not sum to 1");
}

InputDistribution uniform_input(std::size_t k) {
    InputDistribution d;
    d.q.assign(k, 1.0 / static_cast<double>(k));
    return d;
}

double DiscreteChannel::p_min() const {
    double m = 1.0;
    bool seen = false;
    for (double v : transition)
        if (v > 0.0 && v < m) {
            m = v;
            seen = true;
        }
    if (!seen) throw std::logic_error("channel has no nonzero transition");
    return m;
}

void DiscreteChannel::validate() const {
    if (inputs < 1 || outputs < 1) throw std::invalid_argument("channel needs K >= 1 and J >= 1");
    if (transition.size() != inputs * outputs)
        throw std::invalid_argument("transition matrix size mismatch");
    for (std::size_t k = 0; k < inputs; ++k) {
        double sum = 0.0;
        for (std::size_t j = 0; j < outputs; ++j) {
            double v = transition[k * outputs + j];
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("transition probability outside [0,1]");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("transition row does not sum to 1");
    }
}

void ContinuousChannel::validate() const {
    if (inputs < 1) throw std::invalid_argument("constellation is empty");
    if (!(es_over_n0 > 0.0)) throw std::invalid_argument("es_over_n0 must be positive");
    if (constellation.size() != inputs * static_cast<std::size_t>(dim))
        throw std::invalid_argument("constellation size mismatch");
    double energy = 0.0;
    for (std::size_t k = 0; k < inputs; ++k)
        for (int d = 0; d < dim; ++d) {
            double c = constellation[k * dim + d];
            energy += c * c;
        }
    energy /= static_cast<double>(inputs);
    if (std::fabs(energy - 1.0) > 1e-12)
        throw std::invalid_argument("constellation average energy is not 1");
}

namespace {

double ln_gauss_density(const double* y, const double* x, int dim, double sigma2) {
    double d2 = 0.0;
    for (int d = 0; d < dim; ++d) {
        double t = y[d] - x[d];
        d2 += t * t;
    }
    return -0.5 * d2 / sigma2 - 0.5 * dim * std::log(2.0 * M_PI * sigma2);
}

}  // namespace

Channel::Channel(DiscreteChannel d) {
    d.validate();
    k_ = d.inputs;
    j_ = d.outputs;
    symmetric_ = d.symmetric;
    ln_p_.resize(j_ * k_);
    for (std::size_t k = 0; k < k_; ++k)
        for (std::size_t j = 0; j < j_; ++j) {
            double v = d.transition[k * j_ + j];
            ln_p_[j * k_ + k] = v > 0.0 ? std::log(v) : neg_inf;
        }
    log_w_.assign(j_, 0.0);
    disc_ = std::make_shared<const DiscreteChannel>(std::move(d));
}

Channel::Channel(ContinuousChannel c) {
    c.validate();
    k_ = c.inputs;
    j_ = c.quadrature.points;
    symmetric_ = c.symmetric;
    ln_p_.resize(j_ * k_);
    const int dim = c.dim;
    for (std::size_t j = 0; j < j_; ++j) {
        const double* y = &c.quadrature.nodes[j * dim];
        for (std::size_t k = 0; k < k_; ++k)
            ln_p_[j * k_ + k] = ln_gauss_density(y, &c.constellation[k * dim], dim, c.noise_sigma2);
    }
    log_w_ = c.quadrature.log_weights;
    cont_ = std::make_shared<const ContinuousChannel>(std::move(c));
}

DiscreteChannel make_bsc(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("crossover probability outside [0,1]");
    DiscreteChannel ch;
    ch.inputs = 2;
    ch.outputs = 2;
    ch.transition = {1.0 - p, p, p, 1.0 - p};
    ch.input_labels = {"0", "1"};
    ch.output_labels = {"0", "1"};
    ch.symmetric = true;
    return ch;
}

DiscreteChannel make_dmc(std::size_t inputs, std::size_t outputs, std::vector<double> transition) {
    DiscreteChannel ch;
    ch.inputs = inputs;
    ch.outputs = outputs;
    ch.transition = std::move(transition);
    ch.validate();
    return ch;
}

ContinuousChannel make_mpsk_awgn(int m, double es_over_n0, int quad_order) {
    if (m < 2) throw std::invalid_argument("constellation size must be at least 2");
    if (!(es_over_n0 > 0.0)) throw std::invalid_argument("es_over_n0 must be positive");
    if (quad_order < 16) throw std::invalid_argument("quad_order must be at least 16");

    ContinuousChannel ch;
    ch.inputs = static_cast<std::size_t>(m);
    ch.es_over_n0 = es_over_n0;
    ch.noise_sigma2 = 1.0 / (2.0 * es_over_n0);
    const double sigma = std::sqrt(ch.noise_sigma2);

    if (m == 2) {
        ch.dim = 1;
        ch.constellation = {1.0, -1.0};
    } else {
        ch.dim = 2;
        ch.constellation.resize(2 * ch.inputs);
        for (int k = 0; k < m; ++k) {
            double ang = 2.0 * M_PI * k / m;
            ch.constellation[2 * k] = std::cos(ang);
            ch.constellation[2 * k + 1] = std::sin(ang);
        }
    }

    // Box covers the unit-radius hull plus 8 sigma; node density keeps at
    // least ~3.5/pi nodes per sigma so narrow noise at high SNR stays
    // resolved.
    const double half_width = 1.0 + 8.0 * sigma;
    int n = std::max(quad_order,
                     static_cast<int>(std::ceil(3.5 * 2.0 * half_width / (M_PI * sigma))));
    ch.quadrature = make_box_grid(ch.dim, half_width, n);
    ch.symmetric = true;
    return ch;
}

double log_transition(const Channel& ch, std::size_t output, std::size_t input) {
    if (output >= ch.output_count() || input >= ch.input_count())
        throw std::out_of_range("transition index out of range");
    return ch.log_p()[output * ch.input_count() + input];
}

double log_transition(const Channel& ch, const double* y, std::size_t input) {
    const ContinuousChannel* c = ch.gaussian();
    if (!c) throw std::invalid_argument("point evaluation needs a continuous channel");
    if (input >= ch.input_count()) throw std::out_of_range("input index out of range");
    return ln_gauss_density(y, &c->constellation[input * c->dim], c->dim, c->noise_sigma2);
}

DiscreteChannel quantize(const ContinuousChannel& ch, int levels) {
    ch.validate();
    if (levels < 2) throw std::invalid_argument("need at least 2 quantization levels");

    const double sigma = std::sqrt(ch.noise_sigma2);
    const double half_width = 1.0 + 8.0 * sigma;
    const int dim = ch.dim;
    const double step = 2.0 * half_width / levels;

    // Per-dimension bin edge CDF differences; outer bins take the tails.
    auto bin_prob = [&](double center, int bin) {
        double lo = -half_width + bin * step;
        double hi = lo + step;
        double cdf_hi = bin == levels - 1
                            ? 1.0
                            : 0.5 * std::erfc(-(hi - center) / (sigma * std::sqrt(2.0)));
        double cdf_lo = bin == 0 ? 0.0 : 0.5 * std::erfc(-(lo - center) / (sigma * std::sqrt(2.0)));
        return cdf_hi - cdf_lo;
    };

    DiscreteChannel out;
    out.inputs = ch.inputs;
    if (dim == 1) {
        out.outputs = static_cast<std::size_t>(levels);
        out.transition.resize(out.inputs * out.outputs);
        for (std::size_t k = 0; k < ch.inputs; ++k)
            for (int b = 0; b < levels; ++b)
                out.transition[k * out.outputs + b] = bin_prob(ch.constellation[k], b);
        out.symmetric = ch.symmetric && ch.inputs == 2;
    } else {
        out.outputs = static_cast<std::size_t>(levels) * levels;
        out.transition.resize(out.inputs * out.outputs);
        for (std::size_t k = 0; k < ch.inputs; ++k)
            for (int b0 = 0; b0 < levels; ++b0) {
                double p0 = bin_prob(ch.constellation[k * 2], b0);
                for (int b1 = 0; b1 < levels; ++b1)
                    out.transition[k * out.outputs + b0 * levels + b1] =
                        p0 * bin_prob(ch.constellation[k * 2 + 1], b1);
            }
        out.symmetric = false;
    }
    return out;
}

}  // namespace spb
