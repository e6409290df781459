#include "secrecy/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace secrecy::mc {

void McConfig::validate() const {
    if (n_samples < 1) throw std::domain_error("McConfig: n_samples must be >= 1");
}

namespace {

// Fixed chunk width: partial sums are accumulated per chunk in index order
// and reduced in chunk order, so the result is bit-identical regardless of
// how chunks are assigned to threads.
constexpr std::uint64_t kChunk = 1u << 15;

struct PartialSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

// Mean/standard-error accumulation of value_at(u) over the config's uniform
// stream. F: (double u in (0,1]) -> double.
template <typename F>
McEstimate accumulate_mean(const McConfig& config, F&& value_at) {
    config.validate();
    const std::uint64_t n = config.n_samples;
    const std::uint64_t base = detail::stream_base(config.seed, config.stream_id);
    const std::uint64_t n_chunks = (n + kChunk - 1) / kChunk;

    std::vector<PartialSums> partials(n_chunks);
    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(n, begin + kChunk);
        PartialSums p;
        for (std::uint64_t i = begin; i < end; ++i) {
            const double v = value_at(detail::uniform_unit(base, i));
            p.sum += v;
            p.sum_sq += v * v;
        }
        partials[c] = p;
    };

    unsigned n_threads = config.max_threads ? config.max_threads
                                            : std::thread::hardware_concurrency();
    if (n_threads < 1) n_threads = 1;
    if (n_threads > n_chunks) n_threads = static_cast<unsigned>(n_chunks);

    if (n_threads == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
                run_chunk(c);
        };
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    double sum = 0.0, sum_sq = 0.0;
    for (const auto& p : partials) {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }

    McEstimate est;
    est.n = n;
    est.mean = sum / static_cast<double>(n);
    if (n > 1) {
        const double var =
            std::max(0.0, (sum_sq - static_cast<double>(n) * est.mean * est.mean) /
                              static_cast<double>(n - 1));
        est.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return est;
}

struct EquivocationParams {
    double break_lo;
    double break_hi;
    double rate_codeword;
    double rate_secret;
};

EquivocationParams equivocation_params(const RatePair& rates) {
    return {std::exp2(rates.rate_codeword - rates.rate_secret) - 1.0,
            std::exp2(rates.rate_codeword) - 1.0, rates.rate_codeword, rates.rate_secret};
}

} // namespace

double exponential_sample_at(double mean, const McConfig& config, std::uint64_t index) {
    if (!std::isfinite(mean) || mean <= 0.0)
        throw std::domain_error("exponential_sample_at: mean must be finite and > 0, got " +
                                std::to_string(mean));
    const std::uint64_t base = detail::stream_base(config.seed, config.stream_id);
    return -mean * std::log(detail::uniform_unit(base, index));
}

std::vector<SnrSample> sample_exponential(double mean, const McConfig& config) {
    if (!std::isfinite(mean) || mean <= 0.0)
        throw std::domain_error("sample_exponential: mean must be finite and > 0, got " +
                                std::to_string(mean));
    config.validate();
    const std::uint64_t base = detail::stream_base(config.seed, config.stream_id);
    std::vector<SnrSample> out(config.n_samples);
    for (std::uint64_t i = 0; i < config.n_samples; ++i)
        out[i].snr = -mean * std::log(detail::uniform_unit(base, i));
    return out;
}

McEstimate estimate_outage(const ChannelStats& stats, const RatePair& rates, double theta,
                           const McConfig& config) {
    stats.validate();
    rates.validate();
    if (!std::isfinite(theta) || theta <= 0.0 || theta > 1.0)
        throw std::domain_error("estimate_outage: theta must lie in (0,1]");
    const auto eq = equivocation_params(rates);
    const double mean = stats.avg_snr_eve;
    return accumulate_mean(config, [&](double u) {
        const double snr = -mean * std::log(u);
        const double delta = secrecy::detail::equivocation_piecewise(snr, eq.break_lo, eq.break_hi,
                                                            eq.rate_codeword, eq.rate_secret);
        return delta < theta ? 1.0 : 0.0;
    });
}

McEstimate estimate_avg_equivocation(const ChannelStats& stats, const RatePair& rates,
                                     const McConfig& config) {
    stats.validate();
    rates.validate();
    const auto eq = equivocation_params(rates);
    const double mean = stats.avg_snr_eve;
    return accumulate_mean(config, [&](double u) {
        const double snr = -mean * std::log(u);
        return secrecy::detail::equivocation_piecewise(snr, eq.break_lo, eq.break_hi, eq.rate_codeword,
                                              eq.rate_secret);
    });
}

McEstimate estimate_leakage_rate(const ChannelStats& stats, const RatePair& rates,
                                 const McConfig& config) {
    stats.validate();
    rates.validate();
    const auto eq = equivocation_params(rates);
    const double mean = stats.avg_snr_eve;
    const double rate_secret = rates.rate_secret;
    return accumulate_mean(config, [&](double u) {
        const double snr = -mean * std::log(u);
        const double delta = secrecy::detail::equivocation_piecewise(snr, eq.break_lo, eq.break_hi,
                                                            eq.rate_codeword, eq.rate_secret);
        return (1.0 - delta) * rate_secret;
    });
}

McEstimate estimate_ptx(const ChannelStats& stats, const RatePair& rates,
                        const McConfig& config) {
    stats.validate();
    rates.validate();
    const double mean = stats.avg_snr_bob;
    const double rate_codeword = rates.rate_codeword;
    return accumulate_mean(config, [&](double u) {
        const double snr = -mean * std::log(u);
        return std::log2(1.0 + snr) >= rate_codeword ? 1.0 : 0.0;
    });
}

} // namespace secrecy::mc
