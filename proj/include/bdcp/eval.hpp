#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bdcp/types.hpp"

namespace bdcp {

// Labels every time point by the number of change points strictly before it,
// turning a change-point set into a segment labeling of length `total`.
// Change points must be strictly increasing inside (0, total).
std::vector<std::uint32_t> partition_from_changepoints(
    const std::vector<std::size_t> &changepoints, std::size_t total);

// Fraction of point pairs on which two labelings agree (same segment in both
// or different segments in both). Lengths must match and be >= 2.
double rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// Chance-corrected Rand index via the exact hypergeometric expectation.
// When the correction degenerates (both labelings trivial) the value is 1
// for identical partitions and 0 otherwise.
double adjusted_rand_index(std::span<const std::uint32_t> a,
                           std::span<const std::uint32_t> b);

struct SegmentationErrors {
    std::size_t over = 0;   // sup over true boundaries of the gap to the estimate
    std::size_t under = 0;  // sup over estimated boundaries of the gap to the truth
};

// Directed sup-inf distances between boundary sets. Both sets must contain
// the sentinels 0 and `total`.
SegmentationErrors segmentation_errors(const std::vector<std::size_t> &truth,
                                       const std::vector<std::size_t> &estimate,
                                       std::size_t total);

// Max of the two directed errors.
std::size_t hausdorff_distance(const std::vector<std::size_t> &truth,
                               const std::vector<std::size_t> &estimate,
                               std::size_t total);

}  // namespace bdcp
