#include "bdcp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace bdcp {

namespace {

std::vector<std::uint32_t> dense_labels(std::span<const std::uint32_t> labels) {
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    std::vector<std::uint32_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] =
            remap.try_emplace(labels[i], static_cast<std::uint32_t>(remap.size()));
        out[i] = it->second;
    }
    return out;
}

struct PairCounts {
    double same_both = 0.0;  // pairs together in a and together in b
    double same_a = 0.0;
    double same_b = 0.0;
    double total_pairs = 0.0;
    bool identical = false;
};

double choose2(double n) { return n * (n - 1.0) / 2.0; }

PairCounts contingency_pairs(std::span<const std::uint32_t> a,
                             std::span<const std::uint32_t> b) {
    if (a.size() != b.size()) throw InvalidInput("partition length mismatch");
    if (a.size() < 2) throw InvalidInput("partitions need at least 2 points");

    const auto da = dense_labels(a);
    const auto db = dense_labels(b);
    const std::size_t ka = 1 + *std::max_element(da.begin(), da.end());
    const std::size_t kb = 1 + *std::max_element(db.begin(), db.end());

    std::vector<double> cells(ka * kb, 0.0);
    std::vector<double> rows(ka, 0.0), cols(kb, 0.0);
    for (std::size_t t = 0; t < da.size(); ++t) {
        cells[da[t] * kb + db[t]] += 1.0;
        rows[da[t]] += 1.0;
        cols[db[t]] += 1.0;
    }

    PairCounts pc;
    pc.total_pairs = choose2(static_cast<double>(da.size()));
    for (double c : cells) pc.same_both += choose2(c);
    for (double r : rows) pc.same_a += choose2(r);
    for (double c : cols) pc.same_b += choose2(c);
    pc.identical = da == db;
    return pc;
}

std::size_t directed_gap(const std::vector<std::size_t> &from,
                         const std::vector<std::size_t> &to) {
    // sup over `from` of the distance to the nearest element of `to`
    std::size_t worst = 0;
    for (std::size_t b : from) {
        std::size_t nearest = static_cast<std::size_t>(-1);
        for (std::size_t a : to) {
            const std::size_t gap = a > b ? a - b : b - a;
            nearest = std::min(nearest, gap);
        }
        worst = std::max(worst, nearest);
    }
    return worst;
}

void check_sentinels(const std::vector<std::size_t> &set, std::size_t total,
                     const char *name) {
    if (std::find(set.begin(), set.end(), std::size_t{0}) == set.end() ||
        std::find(set.begin(), set.end(), total) == set.end())
        throw InvalidInput(std::string(name) + ": boundary set must contain 0 and T");
    for (std::size_t v : set) {
        if (v > total) throw InvalidInput(std::string(name) + ": boundary beyond T");
    }
}

}  // namespace

std::vector<std::uint32_t> partition_from_changepoints(
    const std::vector<std::size_t> &changepoints, std::size_t total) {
    std::size_t prev = 0;
    for (std::size_t cp : changepoints) {
        if (cp <= prev || cp >= total)
            throw InvalidInput("change points must be strictly increasing inside (0, T)");
        prev = cp;
    }
    std::vector<std::uint32_t> labels(total, 0);
    std::uint32_t label = 0;
    std::size_t next = 0;
    for (std::size_t t = 0; t < total; ++t) {
        if (next < changepoints.size() && changepoints[next] <= t) {
            ++label;
            ++next;
        }
        labels[t] = label;
    }
    return labels;
}

double rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    const PairCounts pc = contingency_pairs(a, b);
    const double diff_both =
        pc.total_pairs - pc.same_a - pc.same_b + pc.same_both;
    return (pc.same_both + diff_both) / pc.total_pairs;
}

double adjusted_rand_index(std::span<const std::uint32_t> a,
                           std::span<const std::uint32_t> b) {
    const PairCounts pc = contingency_pairs(a, b);
    const double expected = pc.same_a * pc.same_b / pc.total_pairs;
    const double maximum = 0.5 * (pc.same_a + pc.same_b);
    const double denom = maximum - expected;
    if (denom == 0.0) return pc.identical ? 1.0 : 0.0;
    return (pc.same_both - expected) / denom;
}

SegmentationErrors segmentation_errors(const std::vector<std::size_t> &truth,
                                       const std::vector<std::size_t> &estimate,
                                       std::size_t total) {
    check_sentinels(truth, total, "truth");
    check_sentinels(estimate, total, "estimate");
    SegmentationErrors err;
    err.over = directed_gap(truth, estimate);
    err.under = directed_gap(estimate, truth);
    return err;
}

std::size_t hausdorff_distance(const std::vector<std::size_t> &truth,
                               const std::vector<std::size_t> &estimate,
                               std::size_t total) {
    const auto err = segmentation_errors(truth, estimate, total);
    return std::max(err.over, err.under);
}

}  // namespace bdcp
