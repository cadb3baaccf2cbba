#include "bdcp/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "bdcp/ballstat.hpp"
#include "bdcp/parallel.hpp"

namespace bdcp {

double lag1_autocorrelation(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 3) throw InvalidInput("lag1_autocorrelation: need at least 3 values");

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double c = x[t] - mean;
        den += c * c;
        if (t > 0) num += c * (x[t - 1] - mean);
    }
    if (den == 0.0) return 0.0;  // constant sequence
    return num / den;
}

std::vector<double> medoid_proxy(const DistanceMatrix &d, Segment seg) {
    if (seg.start >= seg.end || seg.end > d.size())
        throw InvalidInput("medoid_proxy: invalid segment bounds");

    std::size_t medoid = seg.start;
    double best_sum = -1.0;
    for (std::size_t i = seg.start; i < seg.end; ++i) {
        double sum = 0.0;
        for (std::size_t j = seg.start; j < seg.end; ++j) sum += d.at(i, j);
        if (best_sum < 0.0 || sum < best_sum) {
            best_sum = sum;
            medoid = i;
        }
    }

    std::vector<double> proxy(seg.length());
    for (std::size_t t = 0; t < proxy.size(); ++t)
        proxy[t] = d.at(seg.start + t, medoid);
    return proxy;
}

std::size_t block_size_from_correlations(std::size_t length, double rho_linear,
                                         double rho_squared) {
    if (length < 3) throw InvalidInput("block_size_from_correlations: need length >= 3");
    const double t = static_cast<double>(length);
    const double cap = std::floor(8.0 * std::cbrt(t / 100.0));

    auto q = [&](double rho) {
        const double denom = 1.0 - rho * rho;
        if (denom <= 0.0) return cap;  // |rho| -> 1: the cap binds
        const double factor = std::fabs(2.0 * rho / denom);
        const double first = std::floor(std::cbrt(1.5 * t) * std::cbrt(factor * factor));
        return std::min(first, cap);
    };

    const double b = std::max(q(rho_linear), q(rho_squared));
    const double hi = std::max(1.0, std::floor(t / 4.0));
    return static_cast<std::size_t>(std::clamp(b, 1.0, hi));
}

std::size_t choose_block_size(std::span<const double> proxy) {
    std::vector<double> squared(proxy.size());
    for (std::size_t i = 0; i < proxy.size(); ++i) squared[i] = proxy[i] * proxy[i];
    return block_size_from_correlations(proxy.size(), lag1_autocorrelation(proxy),
                                        lag1_autocorrelation(squared));
}

std::vector<std::size_t> mbb_indices(std::size_t length, std::size_t block,
                                     RngStream &rng) {
    if (length == 0) throw InvalidInput("mbb_indices: empty segment");
    if (block == 0 || block > length)
        throw InvalidInput("mbb_indices: block size must lie in [1, length]");

    std::vector<std::size_t> out;
    out.reserve(length + block);
    const std::size_t start_range = length - block + 1;
    while (out.size() < length) {
        const std::size_t start = rng.uniform_below(start_range);
        for (std::size_t k = 0; k < block; ++k) out.push_back(start + k);
    }
    out.resize(length);
    return out;
}

double bootstrap_pvalue(const DistanceMatrix &d, Segment seg,
                        const SegmentBest &observed, std::size_t min_seg,
                        const BootstrapConfig &config) {
    const std::size_t len = seg.length();
    if (len < 2 * min_seg)
        throw InvalidInput("bootstrap_pvalue: segment shorter than 2 * min_seg");
    if (config.replicates == 0)
        throw InvalidInput("bootstrap_pvalue: need at least one replicate");
    if (!(config.p_threshold > 0.0 && config.p_threshold < 1.0))
        throw InvalidInput("bootstrap_pvalue: p threshold must lie in (0, 1)");

    std::size_t block;
    if (config.block_size) {
        block = std::clamp<std::size_t>(*config.block_size, 1, len);
    } else if (len < 3) {
        block = 1;
    } else {
        block = choose_block_size(medoid_proxy(d, seg));
    }

    std::vector<double> replicate_max(config.replicates, 0.0);
    parallel_for(config.replicates, config.threads, [&](std::size_t r) {
        RngStream rng = RngStream::derive(config.seed, r + 1);
        const auto idx = mbb_indices(len, block, rng);

        std::vector<double> values(len * len);
        for (std::size_t a = 0; a < len; ++a) {
            const auto row = d.row(seg.start + idx[a]);
            for (std::size_t b = 0; b < len; ++b)
                values[a * len + b] = row[seg.start + idx[b]];
        }
        const auto resampled = DistanceMatrix::unchecked(len, std::move(values));
        const auto best = segment_scan(resampled, {0, len}, min_seg, config.stride);
        replicate_max[r] = best ? best->value : 0.0;
    });

    std::size_t count = 0;
    for (double v : replicate_max) count += v >= observed.value;
    return static_cast<double>(count) / static_cast<double>(config.replicates + 1);
}

}  // namespace bdcp
