#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bdcp/metric.hpp"

namespace bdcp::sim {

// One simulation design from the built-in catalog, with its size and
// parameter-row selection. Designs with a parameter menu (mean rows, scale
// rows, recursion cases) pick the row by `param_index`.
struct ExampleSpec {
    std::string id;
    std::size_t n = 40;
    std::size_t m = 40;
    std::size_t param_index = 0;
    std::uint64_t seed = 0;
};

struct ExampleInfo {
    std::string id;
    std::string summary;
    std::size_t changepoint_count = 0;
    std::vector<std::string> params;  // menu labels; single entry when fixed
    bool circular = false;
    bool uses_m = false;
};

// All built-in designs, in catalog order.
const std::vector<ExampleInfo> &catalog();

// Lookup by id; nullptr when unknown.
const ExampleInfo *find_example(const std::string &id);

struct GeneratedSeries {
    Series series;
    std::vector<std::size_t> changepoints;  // ground truth boundaries
};

// Generates the design deterministically from (spec, seed). Designs built on
// a driving innovation sequence keep one stream across the whole series and
// switch parameters at the change points, so adjacent segments stay
// dependent; recursive-variance designs warm up with 50 burn-in steps.
GeneratedSeries generate(const ExampleSpec &spec);

}  // namespace bdcp::sim
