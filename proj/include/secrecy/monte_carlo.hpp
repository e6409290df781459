#pragma once

#include <cstdint>
#include <vector>

#include "secrecy/channel.hpp"

namespace secrecy::mc {

// Configuration of one reproducible estimation run. The generator is a
// SplitMix64 counter sequence (Stafford mix13 finalizer over a Weyl
// progression), so the i-th draw of stream (seed, stream_id) is a pure
// function of (seed, stream_id, i). max_threads is an execution knob only
// (0 = hardware concurrency); estimates are bit-identical for any value.
struct McConfig {
    std::uint64_t seed = 0;
    std::uint64_t n_samples = 1;
    std::uint64_t stream_id = 0;
    unsigned max_threads = 0;

    void validate() const; // throws std::domain_error
};

// Empirical mean with its standard error, std_error = sample_std / sqrt(n).
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

// The i-th exponential draw of the config's stream, density
// (1/mean) exp(-x/mean), via inverse CDF x = -mean*ln(u), u uniform on (0,1].
double exponential_sample_at(double mean, const McConfig& config, std::uint64_t index);

// The full stream as a batch: n_samples i.i.d. exponential SNR draws.
// Identical (seed, stream_id) reproduce the stream bit-exactly.
std::vector<SnrSample> sample_exponential(double mean, const McConfig& config);

// Empirical P(fractional equivocation < theta) over n_samples draws of Eve's
// SNR; Bernoulli standard error.
McEstimate estimate_outage(const ChannelStats& stats, const RatePair& rates, double theta,
                           const McConfig& config);

// Sample mean of the per-realization fractional equivocation.
McEstimate estimate_avg_equivocation(const ChannelStats& stats, const RatePair& rates,
                                     const McConfig& config);

// Sample mean of (1 - equivocation) * R_s.
McEstimate estimate_leakage_rate(const ChannelStats& stats, const RatePair& rates,
                                 const McConfig& config);

// Empirical P(capacity(snr_bob) >= R_b) over draws of Bob's SNR.
McEstimate estimate_ptx(const ChannelStats& stats, const RatePair& rates,
                        const McConfig& config);

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Stafford mix13 finalizer (the SplitMix64 output function).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Pseudo-random phase for a (seed, stream_id) substream.
inline std::uint64_t stream_base(std::uint64_t seed, std::uint64_t stream_id) {
    return mix64(seed ^ mix64(stream_id + kGolden));
}

// 64 raw bits at position `index` of the stream.
inline std::uint64_t bits_at(std::uint64_t base, std::uint64_t index) {
    return mix64(base + (index + 1) * kGolden);
}

// Uniform on (0,1], 53 bits; never returns 0, so ln(u) is always finite.
inline double uniform_unit(std::uint64_t base, std::uint64_t index) {
    return 1.0 - static_cast<double>(bits_at(base, index) >> 11) * 0x1.0p-53;
}

} // namespace detail

} // namespace secrecy::mc
