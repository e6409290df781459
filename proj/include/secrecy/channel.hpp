#pragma once

#include <algorithm>
#include <cmath>

namespace secrecy {

// Secret rates below this are rejected everywhere: the average-equivocation
// closed form carries a 1/R_s factor that degenerates as R_s -> 0.
inline constexpr double kMinRateSecret = 1e-9;

// Average received SNRs at Bob and Eve, linear power ratios. dB exists only
// at the CLI boundary.
struct ChannelStats {
    double avg_snr_bob = 1.0;
    double avg_snr_eve = 1.0;

    void validate() const; // throws std::domain_error
};

// Wiretap-code rate pair in bits per channel use: codeword rate R_b and
// confidential-information rate R_s, with R_b >= R_s >= kMinRateSecret.
struct RatePair {
    double rate_codeword = 1.0;
    double rate_secret = 1.0;

    void validate() const; // throws std::domain_error
};

// One instantaneous received SNR realization (linear, >= 0).
struct SnrSample {
    double snr = 0.0;

    void validate() const; // throws std::domain_error
};

// Instantaneous channel capacity log2(1 + snr), bits per channel use.
double capacity(SnrSample snr);

// Maximum achievable fractional equivocation for one fading realization of
// Eve's channel: 1 below 2^{R_b-R_s}-1, 0 above 2^{R_b}-1, linear in
// log2(1+snr) in between. Continuous at both breakpoints.
double fractional_equivocation(SnrSample snr_eve, const RatePair& rates);

// On-off transmission probability P(C_b >= R_b) = exp(-(2^{R_b}-1)/gamma_b).
double transmit_probability(const ChannelStats& stats, const RatePair& rates);

// Weakened Fano bound on Eve's decoding error probability,
// max(0, delta - 1/log2(K)), clamped at zero. Pass +infinity for
// message_set_size_log2 to get the asymptotic form (returns delta itself).
double pe_lower_bound(double delta, double message_set_size_log2);

namespace detail {

// Piecewise equivocation with precomputed breakpoints; hot-loop core shared
// by the public operation and the Monte Carlo estimators.
inline double equivocation_piecewise(double snr, double break_lo, double break_hi,
                                     double rate_codeword, double rate_secret) {
    if (snr <= break_lo) return 1.0;
    if (snr >= break_hi) return 0.0;
    const double v = (rate_codeword - std::log2(1.0 + snr)) / rate_secret;
    return std::clamp(v, 0.0, 1.0);
}

} // namespace detail

} // namespace secrecy
