#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bdcp/metric.hpp"
#include "bdcp/types.hpp"

namespace bdcp {

struct DetectionConfig {
    std::size_t min_seg = 10;
    std::size_t replicates = 199;
    double p_threshold = 0.05;
    std::optional<std::size_t> block_size;  // override the data-driven rule
    std::size_t stride = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    // Optional schedule p_threshold / stage for the k-th test; off by default.
    bool decay_threshold = false;
    // Scans of unchanged segments are reused across iterations. Disabling
    // this must not change any result; the flag exists to verify that.
    bool use_cache = true;
};

struct StageRecord {
    Segment segment;
    SegmentBest best;
    double p_value = 1.0;
    double threshold = 0.0;
    bool accepted = false;
};

struct ChangePointReport {
    std::size_t total_length = 0;
    bool too_short = false;
    std::vector<std::size_t> changepoints;     // ascending boundary positions
    std::vector<double> p_values;              // in discovery order
    std::vector<std::size_t> discovery_order;  // boundaries in discovery order
    std::vector<Segment> segments;             // final partition
    std::vector<StageRecord> stages;           // every test, accepted or not
    DetectionConfig config;
};

// Hierarchical search: repeatedly scan every current segment (cached),
// take the globally best candidate (ties to the smaller segment start, then
// the scan's own tie-break), bootstrap-test it, and split on acceptance.
// Stops at the first rejected candidate or when no segment admits one.
ChangePointReport detect(const DistanceMatrix &d, const DetectionConfig &config);

}  // namespace bdcp
