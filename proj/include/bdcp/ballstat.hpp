#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bdcp/metric.hpp"
#include "bdcp/types.hpp"

namespace bdcp {

// True iff `query` falls into the closed ball centered at `center` whose
// radius reaches `radius_point`. Boundary ties are inside the ball.
bool ball_indicator(const DistanceMatrix &d, std::size_t center,
                    std::size_t radius_point, std::size_t query);

// Reference evaluation of the split statistic for boundary `split` inside
// `segment`: a direct triple loop over (center, radius point, probe) with no
// shared state or shortcuts. Kept as the oracle the incremental scan is
// checked against.
double detection_stat_naive(const DistanceMatrix &d, Segment segment,
                            std::size_t split);

// Per-center orderings of one segment's points by distance, plus the tied
// rank of every (center, point) pair: ranks(i)[j] is the number of
// in-segment points inside the closed ball around i reaching j. Because a
// closed-ball membership test d(i,u) <= d(i,j) is equivalent to
// ranks(i)[u] <= ranks(i)[j], all scan arithmetic runs on these small
// integers instead of raw distances.
class RankTable {
  public:
    std::size_t size() const { return n_; }
    Segment segment() const { return seg_; }

    // Count of in-segment points inside the closed ball around local point
    // `center` reaching local point `j`.
    std::uint16_t count_within(std::size_t center, std::size_t j) const {
        return ranks_[center * n_ + j];
    }
    std::span<const std::uint16_t> ranks(std::size_t center) const {
        return {ranks_.data() + center * n_, n_};
    }
    // Local indices sorted by distance from `center`, ties by index.
    std::span<const std::uint32_t> ordering(std::size_t center) const {
        return {order_.data() + center * n_, n_};
    }

  private:
    friend RankTable build_rank_table(const DistanceMatrix &, Segment);

    Segment seg_;
    std::size_t n_ = 0;
    std::vector<std::uint16_t> ranks_;
    std::vector<std::uint32_t> order_;
};

RankTable build_rank_table(const DistanceMatrix &d, Segment segment);

// Split statistic of a single (split, window_end) cell, computed from the
// rank table in O(n^2). Boundaries are global:
// segment.start < split < window_end <= segment.end.
double detection_stat(const RankTable &table, std::size_t split,
                      std::size_t window_end);

// Convenience form with window_end = segment.end.
double detection_stat(const DistanceMatrix &d, Segment segment, std::size_t split);

// Exact argmax of the split statistic over all admissible cells
// (split, window_end) with
//   segment.start + min_seg <= split <= window_end - min_seg,
//   window_end <= segment.end,
// both boundaries stepping by `stride` from their minima. Ties are broken by
// the smaller window_end, then the smaller split. With stride > 1 the coarse
// optimum is refined by an exhaustive pass over the +-stride neighborhood.
// Returns nullopt when the segment is shorter than 2 * min_seg (no
// admissible candidate).
std::optional<SegmentBest> segment_scan(const DistanceMatrix &d, Segment segment,
                                        std::size_t min_seg, std::size_t stride = 1);

struct ProfileRow {
    std::size_t split = 0;
    std::size_t window_end = 0;
    double value = 0.0;
};

// The raw statistic surface over the stride grid (no refinement), for
// diagnostics and plotting.
std::vector<ProfileRow> scan_profile(const DistanceMatrix &d, Segment segment,
                                     std::size_t min_seg, std::size_t stride = 1);

}  // namespace bdcp
