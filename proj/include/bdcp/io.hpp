#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bdcp/hierarchy.hpp"
#include "bdcp/metric.hpp"
#include "bdcp/simgen.hpp"

namespace bdcp {

// Series CSV: a required header row, then one row per time point. Columns
// are coordinates; under the circular metric the file must have exactly one
// column named "angle".
Series read_series_csv(const std::string &path, MetricKind metric);
void write_series_csv(const std::string &path, const Series &series);

// Precomputed distances: a header row followed by a square numeric matrix.
std::vector<std::vector<double>> read_matrix_csv(const std::string &path);

nlohmann::ordered_json report_to_json(const ChangePointReport &report,
                                      MetricKind metric);

nlohmann::ordered_json truth_to_json(const sim::ExampleSpec &spec,
                                     std::size_t total,
                                     const std::vector<std::size_t> &changepoints);

// Any JSON document carrying "T" and "changepoints"; both detection reports
// and simulation truth sidecars qualify.
struct ChangePointFile {
    std::size_t total = 0;
    std::vector<std::size_t> changepoints;
};
ChangePointFile read_changepoint_json(const std::string &path);

void write_text_file(const std::string &path, const std::string &content);
std::string read_text_file(const std::string &path);

}  // namespace bdcp
