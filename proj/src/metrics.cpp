#include "secrecy/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "secrecy/special_functions.hpp"

namespace secrecy {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void validate_theta(double theta) {
    if (!std::isfinite(theta) || theta <= 0.0 || theta > 1.0)
        throw std::domain_error("theta must lie in (0,1], got " + std::to_string(theta));
}

// e^{1/gamma_e} * Ei(-arg/gamma_e) for arg >= 1, with the two exponentials
// folded together so the term stays finite for arbitrarily small gamma_e.
double scaled_ei_term(double arg, double avg_snr_eve) {
    const double x = arg / avg_snr_eve;
    if (x >= 1.0) return -std::exp((1.0 - arg) / avg_snr_eve) * detail::exp_e1_scaled(x);
    return std::exp(1.0 / avg_snr_eve) * exp_integral_ei(-x);
}

} // namespace

double outage_probability(const ChannelStats& stats, const RatePair& rates, double theta) {
    stats.validate();
    rates.validate();
    validate_theta(theta);
    const double exponent = std::exp2(rates.rate_codeword - theta * rates.rate_secret) - 1.0;
    return std::exp(-exponent / stats.avg_snr_eve);
}

double avg_equivocation(const ChannelStats& stats, const RatePair& rates) {
    stats.validate();
    rates.validate();
    const double ge = stats.avg_snr_eve;
    const double upper = std::exp2(rates.rate_codeword);
    const double lower = std::exp2(rates.rate_codeword - rates.rate_secret);
    double diff;
    if (1.0 / ge <= 600.0) {
        // Direct form of the closed-form expression.
        diff = std::exp(1.0 / ge) *
               (exp_integral_ei(-upper / ge) - exp_integral_ei(-lower / ge));
    } else {
        // exp(1/gamma_e) alone would overflow; fold exponents per term.
        diff = scaled_ei_term(upper, ge) - scaled_ei_term(lower, ge);
    }
    return 1.0 - diff / (rates.rate_secret * kLn2);
}

double leakage_rate(const ChannelStats& stats, const RatePair& rates) {
    stats.validate();
    rates.validate();
    const double ge = stats.avg_snr_eve;
    const double upper = std::exp2(rates.rate_codeword);
    const double lower = std::exp2(rates.rate_codeword - rates.rate_secret);
    return (scaled_ei_term(upper, ge) - scaled_ei_term(lower, ge)) / kLn2;
}

double throughput(const ChannelStats& stats, const RatePair& rates) {
    return transmit_probability(stats, rates) * rates.rate_secret;
}

SecrecyReport full_report(const ChannelStats& stats, const RatePair& rates, double theta) {
    SecrecyReport report;
    report.p_out = outage_probability(stats, rates, theta);
    report.avg_equivocation = avg_equivocation(stats, rates);
    report.leakage_rate = leakage_rate(stats, rates);
    report.p_tx = transmit_probability(stats, rates);
    report.throughput = report.p_tx * rates.rate_secret;
    report.theta = theta;
    return report;
}

} // namespace secrecy
