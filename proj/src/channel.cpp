#include "secrecy/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace secrecy {

void ChannelStats::validate() const {
    if (!std::isfinite(avg_snr_bob) || avg_snr_bob <= 0.0)
        throw std::domain_error("ChannelStats: avg_snr_bob must be finite and > 0, got " +
                                std::to_string(avg_snr_bob));
    if (!std::isfinite(avg_snr_eve) || avg_snr_eve <= 0.0)
        throw std::domain_error("ChannelStats: avg_snr_eve must be finite and > 0, got " +
                                std::to_string(avg_snr_eve));
}

void RatePair::validate() const {
    if (!std::isfinite(rate_codeword) || !std::isfinite(rate_secret))
        throw std::domain_error("RatePair: rates must be finite");
    if (rate_secret < kMinRateSecret)
        throw std::domain_error("RatePair: rate_secret must be >= 1e-9, got " +
                                std::to_string(rate_secret));
    if (rate_codeword < rate_secret)
        throw std::domain_error("RatePair: rate_codeword must be >= rate_secret");
}

void SnrSample::validate() const {
    if (!std::isfinite(snr) || snr < 0.0)
        throw std::domain_error("SnrSample: snr must be finite and >= 0, got " +
                                std::to_string(snr));
}

double capacity(SnrSample snr) {
    snr.validate();
    return std::log2(1.0 + snr.snr);
}

double fractional_equivocation(SnrSample snr_eve, const RatePair& rates) {
    rates.validate();
    snr_eve.validate();
    const double break_lo = std::exp2(rates.rate_codeword - rates.rate_secret) - 1.0;
    const double break_hi = std::exp2(rates.rate_codeword) - 1.0;
    return detail::equivocation_piecewise(snr_eve.snr, break_lo, break_hi,
                                          rates.rate_codeword, rates.rate_secret);
}

double transmit_probability(const ChannelStats& stats, const RatePair& rates) {
    stats.validate();
    rates.validate();
    return std::exp(-(std::exp2(rates.rate_codeword) - 1.0) / stats.avg_snr_bob);
}

double pe_lower_bound(double delta, double message_set_size_log2) {
    if (!std::isfinite(delta) || delta < 0.0 || delta > 1.0)
        throw std::domain_error("pe_lower_bound: delta must lie in [0,1]");
    if (std::isnan(message_set_size_log2) || message_set_size_log2 <= 0.0)
        throw std::domain_error("pe_lower_bound: message_set_size_log2 must be > 0 or +infinity");
    if (std::isinf(message_set_size_log2)) return delta; // asymptotic form
    return std::max(0.0, delta - 1.0 / message_set_size_log2);
}

} // namespace secrecy
