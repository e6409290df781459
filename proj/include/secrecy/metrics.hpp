#pragma once

#include "secrecy/channel.hpp"

namespace secrecy {

// All five per-configuration quantities plus the equivocation threshold they
// were evaluated at. Immutable after construction; invariants
// leakage_rate == (1 - avg_equivocation) * R_s and
// throughput == p_tx * R_s hold to 1e-12.
struct SecrecyReport {
    double p_out = 0.0;            // P(fractional equivocation < theta)
    double avg_equivocation = 0.0; // mean equivocation over fading
    double leakage_rate = 0.0;     // bits per channel use leaked, per transmission
    double p_tx = 0.0;             // on-off transmission probability
    double throughput = 0.0;       // p_tx * R_s
    double theta = 1.0;
};

// Generalized secrecy outage probability exp(-(2^{R_b - theta R_s}-1)/gamma_e)
// for theta in (0,1]. theta = 1 recovers the classical secrecy outage.
double outage_probability(const ChannelStats& stats, const RatePair& rates, double theta);

// Average fractional equivocation over Rayleigh fading:
// 1 - e^{1/gamma_e} (Ei(-2^{R_b}/gamma_e) - Ei(-2^{R_b-R_s}/gamma_e)) / (R_s ln 2).
double avg_equivocation(const ChannelStats& stats, const RatePair& rates);

// Average information leakage rate, conditioned on a transmission occurring:
// e^{1/gamma_e} (Ei(-2^{R_b}/gamma_e) - Ei(-2^{R_b-R_s}/gamma_e)) / ln 2.
// Evaluated directly, not derived from avg_equivocation; the fixed-rate
// identity R_L = (1 - avg_equivocation) R_s cross-checks the two paths.
double leakage_rate(const ChannelStats& stats, const RatePair& rates);

// Secrecy throughput p_tx * R_s, bits per channel use.
double throughput(const ChannelStats& stats, const RatePair& rates);

// Evaluates everything at once.
SecrecyReport full_report(const ChannelStats& stats, const RatePair& rates, double theta);

} // namespace secrecy
