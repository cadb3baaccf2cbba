#include "bdcp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bdcp {

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        // trim surrounding whitespace
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? std::string()
                                                : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string &field, std::size_t line_no) {
    double value = 0.0;
    const char *first = field.data();
    const char *last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw InvalidInput("malformed number '" + field + "' on line " +
                           std::to_string(line_no));
    return value;
}

std::vector<std::string> read_lines(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Series read_series_csv(const std::string &path, MetricKind metric) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw InvalidInput("empty CSV file: " + path);

    const auto header = split_csv_line(lines[0]);
    if (header.empty()) throw InvalidInput("missing CSV header in " + path);

    const bool circular = metric == MetricKind::Circular;
    if (circular && (header.size() != 1 || header[0] != "angle"))
        throw InvalidInput("circular metric expects a single column named 'angle'");

    const std::size_t dim = header.size();
    std::vector<double> values;
    values.reserve((lines.size() - 1) * dim);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != dim)
            throw InvalidInput("row " + std::to_string(i + 1) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(dim));
        for (const auto &f : fields) values.push_back(parse_double(f, i + 1));
    }
    if (values.empty()) throw InvalidInput("CSV has no data rows: " + path);

    return circular ? Series::from_angles(std::move(values))
                    : Series::from_points(dim, std::move(values));
}

void write_series_csv(const std::string &path, const Series &series) {
    std::ostringstream out;
    if (series.angular()) {
        out << "angle\n";
        for (std::size_t t = 0; t < series.size(); ++t)
            out << format_double(series.angle(t)) << "\n";
    } else {
        for (std::size_t k = 0; k < series.dim(); ++k)
            out << (k ? "," : "") << "x" << (k + 1);
        out << "\n";
        for (std::size_t t = 0; t < series.size(); ++t) {
            const auto pt = series.point(t);
            for (std::size_t k = 0; k < pt.size(); ++k)
                out << (k ? "," : "") << format_double(pt[k]);
            out << "\n";
        }
    }
    write_text_file(path, out.str());
}

std::vector<std::vector<double>> read_matrix_csv(const std::string &path) {
    const auto lines = read_lines(path);
    if (lines.size() < 2) throw InvalidInput("matrix CSV needs a header and rows: " + path);

    std::vector<std::vector<double>> raw;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv_line(lines[i]);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto &f : fields) row.push_back(parse_double(f, i + 1));
        raw.push_back(std::move(row));
    }
    return raw;
}

nlohmann::ordered_json report_to_json(const ChangePointReport &report,
                                      MetricKind metric) {
    nlohmann::ordered_json j;
    j["T"] = report.total_length;
    j["too_short"] = report.too_short;
    j["changepoints"] = report.changepoints;
    j["p_values"] = report.p_values;
    j["discovery_order"] = report.discovery_order;

    auto segments = nlohmann::ordered_json::array();
    for (const auto &seg : report.segments)
        segments.push_back({seg.start, seg.end});
    j["segments"] = segments;

    auto stages = nlohmann::ordered_json::array();
    for (const auto &st : report.stages) {
        nlohmann::ordered_json s;
        s["segment"] = {st.segment.start, st.segment.end};
        s["split"] = st.best.split;
        s["window_end"] = st.best.window_end;
        s["value"] = st.best.value;
        s["p_value"] = st.p_value;
        s["threshold"] = st.threshold;
        s["accepted"] = st.accepted;
        stages.push_back(std::move(s));
    }
    j["stages"] = stages;

    nlohmann::ordered_json cfg;
    cfg["metric"] = metric_name(metric);
    cfg["min_seg"] = report.config.min_seg;
    cfg["replicates"] = report.config.replicates;
    cfg["p_threshold"] = report.config.p_threshold;
    if (report.config.block_size)
        cfg["block_size"] = *report.config.block_size;
    else
        cfg["block_size"] = nullptr;
    cfg["stride"] = report.config.stride;
    cfg["seed"] = report.config.seed;
    cfg["decay_threshold"] = report.config.decay_threshold;
    j["config"] = cfg;
    return j;
}

nlohmann::ordered_json truth_to_json(const sim::ExampleSpec &spec, std::size_t total,
                                     const std::vector<std::size_t> &changepoints) {
    nlohmann::ordered_json j;
    j["example"] = spec.id;
    j["T"] = total;
    j["n"] = spec.n;
    j["m"] = spec.m;
    j["param_index"] = spec.param_index;
    j["seed"] = spec.seed;
    j["changepoints"] = changepoints;
    return j;
}

ChangePointFile read_changepoint_json(const std::string &path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception &e) {
        throw InvalidInput("cannot parse JSON file " + path + ": " + e.what());
    }
    if (!j.contains("T") || !j.contains("changepoints"))
        throw InvalidInput(path + ": expected fields 'T' and 'changepoints'");
    ChangePointFile out;
    try {
        out.total = j["T"].get<std::size_t>();
        out.changepoints = j["changepoints"].get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception &e) {
        throw InvalidInput(path + ": malformed change-point file: " + e.what());
    }
    return out;
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write file: " + path);
    out << content;
    if (!out) throw InvalidInput("write failed: " + path);
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace bdcp
