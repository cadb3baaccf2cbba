#include "bdcp/cli_app.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bdcp/ballstat.hpp"
#include "bdcp/eval.hpp"
#include "bdcp/hierarchy.hpp"
#include "bdcp/io.hpp"
#include "bdcp/metric.hpp"
#include "bdcp/simgen.hpp"

namespace bdcp {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;

const char *violation_kind_name(MatrixViolation::Kind kind) {
    using Kind = MatrixViolation::Kind;
    switch (kind) {
        case Kind::NotSquare: return "not_square";
        case Kind::NonFinite: return "non_finite";
        case Kind::NegativeEntry: return "negative_entry";
        case Kind::NonzeroDiagonal: return "nonzero_diagonal";
        case Kind::Asymmetry: return "asymmetry";
    }
    return "unknown";
}

void emit(const nlohmann::ordered_json &doc, const std::string &output_path) {
    const std::string text = doc.dump(2) + "\n";
    if (output_path.empty() || output_path == "-") {
        std::fputs(text.c_str(), stdout);
    } else {
        write_text_file(output_path, text);
    }
}

int emit_error(const InvalidInput &err) {
    nlohmann::ordered_json doc;
    doc["error"] = err.what();
    if (const auto *mv = dynamic_cast<const MatrixValidationError *>(&err)) {
        auto violations = nlohmann::ordered_json::array();
        for (const auto &v : mv->violations()) {
            violations.push_back({{"kind", violation_kind_name(v.kind)},
                                  {"row", v.row},
                                  {"col", v.col},
                                  {"value", v.value},
                                  {"detail", v.describe()}});
        }
        doc["violations"] = violations;
    }
    std::fputs((doc.dump(2) + "\n").c_str(), stdout);
    return kExitInvalidInput;
}

struct CommonOptions {
    std::string input;
    std::string metric = "euclidean";
    std::string output;
    DetectionConfig config;
    long long block_size = -1;  // <0 means unset
};

MetricKind parse_metric(const std::string &name) {
    if (name == "euclidean") return MetricKind::Euclidean;
    if (name == "circular") return MetricKind::Circular;
    if (name == "precomputed") return MetricKind::Precomputed;
    throw InvalidInput("unknown metric: " + name);
}

DistanceMatrix load_distances(const std::string &path, MetricKind metric) {
    if (metric == MetricKind::Precomputed)
        return validate_distance_matrix(read_matrix_csv(path));
    return pairwise_distance_matrix(read_series_csv(path, metric), metric);
}

void add_detect_flags(CLI::App *cmd, CommonOptions &opt, bool with_bootstrap) {
    cmd->add_option("input", opt.input, "series or distance-matrix CSV")->required();
    cmd->add_option("--metric", opt.metric, "euclidean, circular or precomputed")
        ->check(CLI::IsMember({"euclidean", "circular", "precomputed"}));
    cmd->add_option("--min-seg", opt.config.min_seg, "minimum segment size");
    cmd->add_option("--stride", opt.config.stride, "scan grid step");
    cmd->add_option("--output", opt.output, "output path ('-' for stdout)");
    if (with_bootstrap) {
        cmd->add_option("--replicates", opt.config.replicates,
                        "bootstrap replicate count");
        cmd->add_option("--p-threshold", opt.config.p_threshold,
                        "significance threshold");
        cmd->add_option("--block-size", opt.block_size,
                        "bootstrap block size override");
        cmd->add_option("--seed", opt.config.seed, "random seed");
        cmd->add_option("--threads", opt.config.threads,
                        "worker threads (0 = hardware)");
        cmd->add_flag("--decay-threshold", opt.config.decay_threshold,
                      "divide the threshold by the stage number");
    }
}

int cmd_detect(const CommonOptions &opt) {
    const MetricKind metric = parse_metric(opt.metric);
    DetectionConfig cfg = opt.config;
    if (opt.block_size >= 0)
        cfg.block_size = static_cast<std::size_t>(opt.block_size);
    const DistanceMatrix d = load_distances(opt.input, metric);
    const ChangePointReport report = detect(d, cfg);
    emit(report_to_json(report, metric), opt.output);
    return kExitOk;
}

int cmd_profile(const CommonOptions &opt, std::size_t start, long long end_opt) {
    const MetricKind metric = parse_metric(opt.metric);
    const DistanceMatrix d = load_distances(opt.input, metric);
    const std::size_t end =
        end_opt < 0 ? d.size() : static_cast<std::size_t>(end_opt);
    if (start >= end || end > d.size())
        throw InvalidInput("profile: invalid segment bounds");

    const auto rows =
        scan_profile(d, {start, end}, opt.config.min_seg, opt.config.stride);
    std::string csv = "M,L,V\n";
    char buf[64];
    for (const auto &row : rows) {
        std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g\n", row.split, row.window_end,
                      row.value);
        csv += buf;
    }
    if (opt.output.empty() || opt.output == "-") {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_text_file(opt.output, csv);
    }
    return kExitOk;
}

int cmd_simulate(const sim::ExampleSpec &spec, const std::string &output) {
    const auto generated = sim::generate(spec);
    write_series_csv(output, generated.series);

    std::string truth_path = output;
    const auto dot = truth_path.find_last_of('.');
    const auto slash = truth_path.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        truth_path.resize(dot);
    truth_path += ".truth.json";

    const auto truth =
        truth_to_json(spec, generated.series.size(), generated.changepoints);
    write_text_file(truth_path, truth.dump(2) + "\n");
    return kExitOk;
}

int cmd_evaluate(const std::string &truth_path, const std::string &estimate_path,
                 const std::string &output) {
    const auto truth = read_changepoint_json(truth_path);
    const auto estimate = read_changepoint_json(estimate_path);
    if (truth.total != estimate.total)
        throw InvalidInput("sequence lengths differ: " + std::to_string(truth.total) +
                           " vs " + std::to_string(estimate.total));
    if (truth.total < 2) throw InvalidInput("need at least 2 time points");

    const auto p_truth = partition_from_changepoints(truth.changepoints, truth.total);
    const auto p_est =
        partition_from_changepoints(estimate.changepoints, estimate.total);

    auto with_sentinels = [&](const std::vector<std::size_t> &cps) {
        std::vector<std::size_t> out = {0};
        out.insert(out.end(), cps.begin(), cps.end());
        out.push_back(truth.total);
        return out;
    };
    const auto t_set = with_sentinels(truth.changepoints);
    const auto e_set = with_sentinels(estimate.changepoints);
    const auto errs = segmentation_errors(t_set, e_set, truth.total);

    nlohmann::ordered_json j;
    j["T"] = truth.total;
    j["rand_index"] = rand_index(p_truth, p_est);
    j["adjusted_rand_index"] = adjusted_rand_index(p_truth, p_est);
    j["over_segmentation"] = errs.over;
    j["under_segmentation"] = errs.under;
    j["hausdorff"] = hausdorff_distance(t_set, e_set, truth.total);
    emit(j, output);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"Change-point detection for dependent and non-Euclidean sequences"};
    app.require_subcommand(1);

    CommonOptions detect_opt;
    auto *detect_cmd = app.add_subcommand("detect", "detect change points");
    add_detect_flags(detect_cmd, detect_opt, true);

    CommonOptions profile_opt;
    std::size_t profile_start = 0;
    long long profile_end = -1;
    auto *profile_cmd =
        app.add_subcommand("profile", "export the scan statistic surface");
    add_detect_flags(profile_cmd, profile_opt, false);
    profile_cmd->add_option("--start", profile_start, "segment start boundary");
    profile_cmd->add_option("--end", profile_end, "segment end boundary");

    sim::ExampleSpec spec;
    std::string sim_output;
    auto *sim_cmd = app.add_subcommand("simulate", "generate a catalog design");
    sim_cmd->add_option("--example", spec.id, "design id, e.g. 4.1.8")->required();
    sim_cmd->add_option("--n", spec.n, "first block size");
    sim_cmd->add_option("--m", spec.m, "second block size");
    sim_cmd->add_option("--param-index", spec.param_index, "parameter row (0-based)");
    sim_cmd->add_option("--seed", spec.seed, "random seed");
    sim_cmd->add_option("--output", sim_output, "series CSV path")->required();

    std::string eval_truth, eval_estimate, eval_output;
    auto *eval_cmd = app.add_subcommand("evaluate", "compare change-point sets");
    eval_cmd->add_option("truth", eval_truth, "truth JSON")->required();
    eval_cmd->add_option("estimate", eval_estimate, "estimate JSON")->required();
    eval_cmd->add_option("--output", eval_output, "output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        nlohmann::ordered_json doc;
        doc["error"] = e.what();
        std::fputs((doc.dump(2) + "\n").c_str(), stdout);
        return kExitInvalidInput;
    }

    try {
        if (detect_cmd->parsed()) return cmd_detect(detect_opt);
        if (profile_cmd->parsed())
            return cmd_profile(profile_opt, profile_start, profile_end);
        if (sim_cmd->parsed()) return cmd_simulate(spec, sim_output);
        if (eval_cmd->parsed()) return cmd_evaluate(eval_truth, eval_estimate, eval_output);
    } catch (const InvalidInput &e) {
        return emit_error(e);
    }
    return kExitOk;
}

}  // namespace bdcp
