#include "bdcp/hierarchy.hpp"

#include <algorithm>
#include <map>

#include "bdcp/ballstat.hpp"
#include "bdcp/bootstrap.hpp"
#include "bdcp/rng.hpp"

namespace bdcp {

namespace {

void check_config(const DetectionConfig &cfg) {
    if (cfg.min_seg == 0) throw InvalidInput("detect: min_seg must be >= 1");
    if (cfg.stride == 0) throw InvalidInput("detect: stride must be >= 1");
    if (cfg.replicates == 0) throw InvalidInput("detect: need at least one replicate");
    if (!(cfg.p_threshold > 0.0 && cfg.p_threshold < 1.0))
        throw InvalidInput("detect: p threshold must lie in (0, 1)");
}

}  // namespace

ChangePointReport detect(const DistanceMatrix &d, const DetectionConfig &cfg) {
    check_config(cfg);

    ChangePointReport report;
    report.total_length = d.size();
    report.config = cfg;

    const std::size_t total = d.size();
    if (total < 2 * cfg.min_seg) {
        report.too_short = true;
        if (total > 0) report.segments.push_back({0, total});
        return report;
    }

    std::vector<Segment> live = {{0, total}};
    std::map<Segment, std::optional<SegmentBest>> cache;
    std::size_t stage = 0;

    for (;;) {
        if (!cfg.use_cache) cache.clear();
        for (const Segment &seg : live) {
            if (!cache.contains(seg))
                cache[seg] = segment_scan(d, seg, cfg.min_seg, cfg.stride);
        }

        // Globally best candidate; `live` is kept sorted by start, so a
        // strict comparison gives ties to the smaller segment start.
        const Segment *best_seg = nullptr;
        SegmentBest best;
        for (const Segment &seg : live) {
            const auto &candidate = cache[seg];
            if (!candidate) continue;
            if (!best_seg || candidate->value > best.value) {
                best_seg = &seg;
                best = *candidate;
            }
        }
        if (!best_seg) break;

        ++stage;
        const double threshold =
            cfg.decay_threshold ? cfg.p_threshold / static_cast<double>(stage)
                                : cfg.p_threshold;

        BootstrapConfig bcfg;
        bcfg.replicates = cfg.replicates;
        bcfg.block_size = cfg.block_size;
        bcfg.p_threshold = cfg.p_threshold;
        bcfg.seed = mix64(mix64(cfg.seed) ^ mix64(stage));
        bcfg.stride = cfg.stride;
        bcfg.threads = cfg.threads;

        const double p = bootstrap_pvalue(d, *best_seg, best, cfg.min_seg, bcfg);
        const bool accepted = p < threshold;
        report.stages.push_back({*best_seg, best, p, threshold, accepted});
        if (!accepted) break;

        report.discovery_order.push_back(best.split);
        report.p_values.push_back(p);

        const Segment old = *best_seg;
        live.erase(std::find(live.begin(), live.end(), old));
        live.push_back({old.start, best.split});
        live.push_back({best.split, old.end});
        std::sort(live.begin(), live.end());
    }

    report.changepoints = report.discovery_order;
    std::sort(report.changepoints.begin(), report.changepoints.end());
    report.segments = live;
    return report;
}

}  // namespace bdcp
