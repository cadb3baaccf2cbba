#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bdcp/metric.hpp"
#include "bdcp/rng.hpp"
#include "bdcp/types.hpp"

namespace bdcp {

struct BootstrapConfig {
    std::size_t replicates = 199;
    std::optional<std::size_t> block_size;  // override; otherwise data-driven
    double p_threshold = 0.05;
    std::uint64_t seed = 0;
    std::size_t stride = 1;
    unsigned threads = 1;
};

// Lag-1 autocorrelation: sum_{t>=2}(x_t - mean)(x_{t-1} - mean) over
// sum_t (x_t - mean)^2. Constant sequences yield 0. Needs length >= 3.
double lag1_autocorrelation(std::span<const double> x);

// Scalarizes the segment for autocorrelation estimation: the distance of
// every in-segment point to the segment's medoid (the point minimizing the
// total distance to the others; ties go to the smallest index). Works for
// any metric, including purely precomputed matrices.
std::vector<double> medoid_proxy(const DistanceMatrix &d, Segment segment);

// The block-size rule given the lag-1 autocorrelations of the proxy and of
// its squares: each correlation contributes
//   q = min( floor((3T/2)^(1/3) * |2r/(1-r^2)|^(2/3)), floor(8 (T/100)^(1/3)) )
// and the block size is max of the two q values, clamped to [1, T/4].
std::size_t block_size_from_correlations(std::size_t length, double rho_linear,
                                         double rho_squared);

// Data-driven block size of a proxy sequence (length >= 3).
std::size_t choose_block_size(std::span<const double> proxy);

// Moving-block resample plan: ceil(length / block) blocks of `block`
// consecutive local indices, start positions uniform over the fully valid
// range, concatenated and truncated to `length`. Requires 1 <= block <= length.
std::vector<std::size_t> mbb_indices(std::size_t length, std::size_t block,
                                     RngStream &rng);

// Bootstrap p-value of an observed segment maximum: each replicate
// block-resamples the segment, rebuilds the distance submatrix by index
// lookup, rescans, and the p-value is #{replicate max >= observed} / (R + 1).
// Replicates run in parallel with per-replicate streams derived from
// (seed, replicate), so the result does not depend on the worker count.
double bootstrap_pvalue(const DistanceMatrix &d, Segment segment,
                        const SegmentBest &observed, std::size_t min_seg,
                        const BootstrapConfig &config);

}  // namespace bdcp
