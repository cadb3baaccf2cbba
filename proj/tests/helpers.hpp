#pragma once

#include <cmath>
#include <vector>

#include "bdcp/ballstat.hpp"
#include "bdcp/metric.hpp"
#include "bdcp/rng.hpp"
#include "bdcp/types.hpp"

namespace bdcp::testing {

inline Series random_point_series(RngStream &rng, std::size_t count, std::size_t dim,
                                  double cluster_shift = 0.0,
                                  std::size_t shift_from = 0) {
    std::vector<double> values;
    values.reserve(count * dim);
    for (std::size_t t = 0; t < count; ++t) {
        for (std::size_t k = 0; k < dim; ++k) {
            double v = rng.normal();
            if (t >= shift_from) v += cluster_shift;
            values.push_back(v);
        }
    }
    return Series::from_points(dim, std::move(values));
}

inline Series random_angle_series(RngStream &rng, std::size_t count) {
    std::vector<double> values;
    values.reserve(count);
    for (std::size_t t = 0; t < count; ++t)
        values.push_back(rng.uniform(-8.0, 8.0));
    return Series::from_angles(std::move(values));
}

// Exhaustive (split, window) grid argmax evaluated through the naive
// statistic; the independent oracle for segment_scan.
inline SegmentBest naive_grid_best(const DistanceMatrix &d, Segment seg,
                                   std::size_t min_seg) {
    SegmentBest best;
    bool found = false;
    for (std::size_t window_end = seg.start + 2 * min_seg; window_end <= seg.end;
         ++window_end) {
        for (std::size_t split = seg.start + min_seg; split + min_seg <= window_end;
             ++split) {
            const double v =
                detection_stat_naive(d, {seg.start, window_end}, split);
            if (!found || v > best.value) {
                best = {split, window_end, v};
                found = true;
            }
        }
    }
    return best;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) / scale;
}

}  // namespace bdcp::testing
