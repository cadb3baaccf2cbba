// Acceptance suite: one criterion per command-line argument (1..9), all of
// them when invoked with no arguments. Prints one pass/fail line per
// criterion and exits nonzero if any fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "bdcp/ballstat.hpp"
#include "bdcp/bootstrap.hpp"
#include "bdcp/eval.hpp"
#include "bdcp/hierarchy.hpp"
#include "bdcp/io.hpp"
#include "bdcp/metric.hpp"
#include "bdcp/parallel.hpp"
#include "bdcp/population.hpp"
#include "bdcp/rng.hpp"
#include "bdcp/simgen.hpp"
#include "helpers.hpp"

using namespace bdcp;

namespace {

constexpr double kPi = std::numbers::pi;

unsigned workers() { return effective_threads(0); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

DistanceMatrix random_scan_instance(RngStream &rng, std::size_t t, bool circular) {
    if (circular) {
        auto s = testing::random_angle_series(rng, t);
        return pairwise_distance_matrix(s, MetricKind::Circular);
    }
    const std::size_t dim = 1 + rng.uniform_below(3);
    const bool clustered = rng.uniform() < 0.5;
    auto s = testing::random_point_series(rng, t, dim, clustered ? 2.5 : 0.0,
                                          clustered ? t / 2 : t);
    return pairwise_distance_matrix(s, MetricKind::Euclidean);
}

double mean_ari_over_replicates(const std::string &example_id, std::size_t param_index,
                                std::size_t replicates, std::uint64_t seed_base) {
    std::vector<double> ari(replicates, 0.0);
    parallel_for(replicates, workers(), [&](std::size_t r) {
        sim::ExampleSpec spec;
        spec.id = example_id;
        spec.param_index = param_index;
        spec.seed = seed_base + r;
        const auto gen = sim::generate(spec);
        const auto metric =
            gen.series.angular() ? MetricKind::Circular : MetricKind::Euclidean;
        const auto d = pairwise_distance_matrix(gen.series, metric);

        DetectionConfig cfg;
        cfg.seed = seed_base + 1000 + r;
        cfg.threads = 1;
        const auto report = detect(d, cfg);

        const auto truth = partition_from_changepoints(gen.changepoints, d.size());
        const auto est = partition_from_changepoints(report.changepoints, d.size());
        ari[r] = adjusted_rand_index(truth, est);
    });
    double sum = 0.0;
    for (double v : ari) sum += v;
    return sum / static_cast<double>(replicates);
}

// 1. Fast scan equals the exhaustive naive grid search.
Outcome criterion_oracle_equivalence() {
    const int instances = 200;
    std::atomic<int> argmax_mismatch{0};
    std::vector<double> worst(instances, 0.0);
    parallel_for(instances, workers(), [&](std::size_t i) {
        RngStream rng = RngStream::derive(0xACC1, i);
        const std::size_t min_seg = 2 + rng.uniform_below(3);
        const std::size_t t = 2 * min_seg + rng.uniform_below(31 - 2 * min_seg);
        const auto d = random_scan_instance(rng, t, i % 2 == 1);

        const auto fast = segment_scan(d, {0, t}, min_seg);
        const auto oracle = testing::naive_grid_best(d, {0, t}, min_seg);
        if (!fast || fast->split != oracle.split ||
            fast->window_end != oracle.window_end)
            ++argmax_mismatch;
        else
            worst[i] = testing::rel_diff(fast->value, oracle.value);
    });
    double max_err = 0.0;
    for (double v : worst) max_err = std::max(max_err, v);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "200 instances, argmax mismatches %d, max value rel err %.2e",
                  argmax_mismatch.load(), max_err);
    return {argmax_mismatch == 0 && max_err < 1e-12, buf};
}

// 2. Population detection curve peaks at the grid point nearest alpha.
Outcome criterion_population_maximizer() {
    int failures = 0;
    for (int pair_idx = 0; pair_idx < 50; ++pair_idx) {
        RngStream rng = RngStream::derive(0xACC2, pair_idx);
        const std::size_t half = 2 + rng.uniform_below(3);
        const std::size_t atoms = 2 * half;
        const std::size_t dim = 1 + rng.uniform_below(3);
        const auto series = testing::random_point_series(rng, atoms, dim);
        const auto d = pairwise_distance_matrix(series, MetricKind::Euclidean);

        population::DiscreteDistribution mu, nu;
        mu.weights.assign(atoms, 0.0);
        nu.weights.assign(atoms, 0.0);
        auto fill = [&](std::vector<double> &w, std::size_t from, std::size_t to) {
            double sum = 0.0;
            for (std::size_t k = from; k < to; ++k) sum += (w[k] = 0.1 + rng.uniform());
            for (std::size_t k = from; k < to; ++k) w[k] /= sum;
        };
        fill(mu.weights, 0, half);
        fill(nu.weights, half, atoms);

        for (double alpha : {0.2, 0.5, 0.8}) {
            double best_beta = 0.0, best_v = -1.0;
            for (int k = 1; k <= 99; ++k) {
                const double beta = k / 100.0;
                const double v = population::detection_function(beta, alpha, mu, nu, d);
                if (v > best_v) {
                    best_v = v;
                    best_beta = beta;
                }
            }
            if (std::fabs(best_beta - alpha) > 1e-9) ++failures;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "50 pairs x 3 alphas, off-peak count %d", failures);
    return {failures == 0, buf};
}

// 3. The scaled sample statistic approaches the population curve value.
Outcome criterion_population_convergence() {
    const std::size_t t = 2000;
    std::vector<double> points(t, 0.0);
    for (std::size_t i = t / 2; i < t; ++i) points[i] = 1.0;
    const auto d = pairwise_distance_matrix(Series::from_points(1, std::move(points)),
                                            MetricKind::Euclidean);
    const double sample = detection_stat(d, {0, t}, t / 2) / static_cast<double>(t);

    const auto atom_d = validate_distance_matrix({{0, 1}, {1, 0}});
    const population::DiscreteDistribution mu{{1.0, 0.0}};
    const population::DiscreteDistribution nu{{0.0, 1.0}};
    const double target = population::detection_function(0.5, 0.5, mu, nu, atom_d);

    const double gap = std::fabs(sample - target);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "T=2000: V(M,T)/T = %.6f vs population %.6f (|gap| = %.2e)", sample,
                  target, gap);
    return {gap < 0.02 && std::fabs(target - 0.125) < 1e-12, buf};
}

// 4. Type-I calibration on an iid trivariate normal sequence.
Outcome criterion_null_calibration() {
    const int runs = 200;
    std::vector<int> detected(runs, 0);
    parallel_for(runs, workers(), [&](std::size_t r) {
        sim::ExampleSpec spec;
        spec.id = "4.1.1";
        spec.seed = 40000 + r;
        const auto gen = sim::generate(spec);
        const auto d = pairwise_distance_matrix(gen.series, MetricKind::Euclidean);

        DetectionConfig cfg;
        cfg.seed = 90000 + r;
        cfg.threads = 1;
        const auto report = detect(d, cfg);
        detected[r] = report.changepoints.empty() ? 0 : 1;
    });
    int spurious = 0;
    for (int v : detected) spurious += v;
    const double rate = spurious / static_cast<double>(runs);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "spurious-detection rate %.3f (threshold 0.10)",
                  rate);
    return {rate <= 0.10, buf};
}

// 5. Mean-shift recovery.
Outcome criterion_mean_shift() {
    const double mean_ari = mean_ari_over_replicates("4.1.8", 0, 50, 50000);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "mean ARI %.3f (threshold 0.90)", mean_ari);
    return {mean_ari >= 0.90, buf};
}

// 6. Scale-shift recovery.
Outcome criterion_scale_shift() {
    const double mean_ari = mean_ari_over_replicates("4.1.11", 2, 50, 60000);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "mean ARI %.3f (threshold 0.85)", mean_ari);
    return {mean_ari >= 0.85, buf};
}

// 7. Circular-data recovery on the one- and three-change designs.
Outcome criterion_circular() {
    const double ari_one = mean_ari_over_replicates("4.2.2", 0, 50, 70000);
    const double ari_three = mean_ari_over_replicates("4.2.4", 0, 50, 80000);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "mean ARI %.3f / %.3f (threshold 0.90)", ari_one,
                  ari_three);
    return {ari_one >= 0.90 && ari_three >= 0.90, buf};
}

// 8. Invariance suite: scaling, within-side permutations, whole turns.
Outcome criterion_invariance() {
    std::atomic<int> failures{0};
    std::vector<double> worst(100, 0.0);

    parallel_for(100, workers(), [&](std::size_t case_idx) {
        RngStream rng = RngStream::derive(0xACC8, case_idx);
        double err = 0.0;

        if (case_idx < 40) {
            // scaling: scans and full detection unchanged
            const std::size_t t = 24 + rng.uniform_below(37);
            const auto d = random_scan_instance(rng, t, false);
            const double c = std::exp(rng.uniform(-5.0, 5.0));
            const auto scaled = d.scaled(c);

            const auto b0 = segment_scan(d, {0, t}, 4);
            const auto b1 = segment_scan(scaled, {0, t}, 4);
            if (!b0 || !b1 || b0->split != b1->split ||
                b0->window_end != b1->window_end) {
                ++failures;
                return;
            }
            err = testing::rel_diff(b0->value, b1->value);

            DetectionConfig cfg;
            cfg.min_seg = 8;
            cfg.replicates = 39;
            cfg.seed = 5000 + case_idx;
            cfg.threads = 1;
            const auto r0 = detect(d, cfg);
            const auto r1 = detect(scaled, cfg);
            if (r0.changepoints != r1.changepoints) ++failures;
        } else if (case_idx < 70) {
            // permutations inside each side of a fixed split
            const std::size_t half = 8 + rng.uniform_below(10);
            const std::size_t t = 2 * half;
            auto series = testing::random_point_series(rng, t, 2, 1.5, half);
            const auto d = pairwise_distance_matrix(series, MetricKind::Euclidean);
            const double v0 = detection_stat(d, {0, t}, half);

            std::vector<std::size_t> order(t);
            for (std::size_t i = 0; i < t; ++i) order[i] = i;
            for (std::size_t i = half - 1; i > 0; --i)
                std::swap(order[i], order[rng.uniform_below(i + 1)]);
            for (std::size_t i = t - 1; i > half; --i)
                std::swap(order[i], order[half + rng.uniform_below(i - half + 1)]);
            std::vector<double> permuted;
            for (std::size_t i = 0; i < t; ++i) {
                const auto pt = series.point(order[i]);
                permuted.insert(permuted.end(), pt.begin(), pt.end());
            }
            const auto dp = pairwise_distance_matrix(
                Series::from_points(2, std::move(permuted)), MetricKind::Euclidean);
            err = testing::rel_diff(v0, detection_stat(dp, {0, t}, half));
        } else {
            // adding whole turns to angular data
            const std::size_t t = 30 + rng.uniform_below(31);
            std::vector<double> angles(t), shifted(t);
            for (std::size_t i = 0; i < t; ++i) {
                angles[i] = rng.uniform(0.0, 4.0 * kPi);
                const int k = static_cast<int>(rng.uniform_below(7)) - 3;
                shifted[i] = angles[i] + 2.0 * kPi * k;
            }
            const auto d0 = pairwise_distance_matrix(Series::from_angles(angles),
                                                     MetricKind::Circular);
            const auto d1 = pairwise_distance_matrix(Series::from_angles(shifted),
                                                     MetricKind::Circular);
            const auto b0 = segment_scan(d0, {0, t}, 5);
            const auto b1 = segment_scan(d1, {0, t}, 5);
            if (!b0 || !b1 || b0->split != b1->split ||
                b0->window_end != b1->window_end) {
                ++failures;
                return;
            }
            err = testing::rel_diff(b0->value, b1->value);

            DetectionConfig cfg;
            cfg.min_seg = 8;
            cfg.replicates = 39;
            cfg.seed = 6000 + case_idx;
            cfg.threads = 1;
            const auto r0 = detect(d0, cfg);
            const auto r1 = detect(d1, cfg);
            if (r0.changepoints != r1.changepoints) ++failures;
        }
        worst[case_idx] = err;
    });

    double max_err = 0.0;
    for (double v : worst) max_err = std::max(max_err, v);
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "100 cases, argmax/set failures %d, max value rel err %.2e",
                  failures.load(), max_err);
    return {failures == 0 && max_err < 1e-12, buf};
}

// 9. Reports are byte-identical across worker counts.
Outcome criterion_determinism() {
    std::atomic<int> mismatches{0};
    parallel_for(20, 2, [&](std::size_t case_idx) {
        RngStream rng = RngStream::derive(0xACC9, case_idx);
        sim::ExampleSpec spec;
        const char *ids[] = {"4.1.1", "4.1.8", "4.2.2", "4.1.11", "4.2.4"};
        spec.id = ids[case_idx % 5];
        spec.n = 15 + rng.uniform_below(26);
        spec.m = 15 + rng.uniform_below(26);
        spec.param_index = sim::find_example(spec.id)->params.size() > 1
                               ? rng.uniform_below(3)
                               : 0;
        spec.seed = 7000 + case_idx;
        const auto gen = sim::generate(spec);
        const auto metric =
            gen.series.angular() ? MetricKind::Circular : MetricKind::Euclidean;
        const auto d = pairwise_distance_matrix(gen.series, metric);

        DetectionConfig cfg;
        cfg.min_seg = 8;
        cfg.replicates = 39;
        cfg.seed = 7100 + case_idx;
        cfg.threads = 1;
        const auto r1 = report_to_json(detect(d, cfg), metric).dump(2);
        cfg.threads = 8;
        const auto r8 = report_to_json(detect(d, cfg), metric).dump(2);
        if (r1 != r8) ++mismatches;
    });
    char buf[96];
    std::snprintf(buf, sizeof(buf), "20 cases, byte mismatches %d", mismatches.load());
    return {mismatches == 0, buf};
}

struct Criterion {
    int id;
    const char *name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "scan matches the exhaustive naive oracle", criterion_oracle_equivalence},
    {2, "population curve peaks at the change fraction", criterion_population_maximizer},
    {3, "sample statistic converges to the population value",
     criterion_population_convergence},
    {4, "null calibration at the 0.05 threshold", criterion_null_calibration},
    {5, "mean-shift recovery (design 4.1.8)", criterion_mean_shift},
    {6, "scale-shift recovery (design 4.1.11)", criterion_scale_shift},
    {7, "circular recovery (designs 4.2.2, 4.2.4)", criterion_circular},
    {8, "invariance suite (scaling, permutation, whole turns)", criterion_invariance},
    {9, "byte-identical reports across worker counts", criterion_determinism},
};

}  // namespace

int main(int argc, char **argv) {
    std::vector<int> requested;
    for (int i = 1; i < argc; ++i) requested.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const auto &criterion : kCriteria) {
        if (!requested.empty() &&
            std::find(requested.begin(), requested.end(), criterion.id) ==
                requested.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        const Outcome outcome = criterion.run();
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("[%s] criterion %d: %s — %s (%.1fs)\n",
                    outcome.pass ? "PASS" : "FAIL", criterion.id, criterion.name,
                    outcome.detail.c_str(), seconds);
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
