#include "spb/sp67.hpp"

#include <cmath>
#include <stdexcept>

#include "spb/exponents.hpp"

namespace spb {

BoundResult sp67_bound(const Channel& ch, const CodeSpec& spec) {
    spec.validate();
    if (ch.continuous())
        throw std::invalid_argument(
            "sp67_bound requires a discrete channel; quantize continuous-output "
            "channels first");

    const double n = static_cast<double>(spec.n);
    const double k = static_cast<double>(ch.input_count());
    const double ln8 = std::log(8.0);

    const double o1 = ln8 / n + k * std::log(n) / n;
    const double p_min = ch.discrete()->p_min();
    const double o2 = std::sqrt(8.0 / n) * (1.0 - 0.5 * std::log(p_min)) + ln8 / n;

    BoundResult out;
    out.kind = BoundKind::Sp67;

    const double shifted = spec.rate_nats - o1;
    if (shifted <= 0.0) {
        out.vacuous = true;
        out.reason = "backoff term exceeds the code rate at this block length";
        out.log_pe = 0.0;
        return out;
    }

    const ExponentValue ev = esp(ch, shifted);
    if (ev.diverges) {
        out.vacuous = true;
        out.reason = "shifted rate falls below the infinite-order cutoff rate";
        out.log_pe = 0.0;
        return out;
    }

    out.log_pe = std::min(0.0, -n * (ev.value + o2));
    out.rho_star = ev.optimizer_rho;
    return out;
}

}  // namespace spb
