#include "bdcp/metric.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bdcp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAsymmetryTolerance = 1e-9;

double reduce_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

}  // namespace

const char *metric_name(MetricKind m) {
    switch (m) {
        case MetricKind::Euclidean: return "euclidean";
        case MetricKind::Circular: return "circular";
        case MetricKind::Precomputed: return "precomputed";
    }
    return "unknown";
}

std::string MatrixViolation::describe() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::NotSquare:
            out << "row " << row << " has " << col << " columns, expected " << value;
            return out.str();
        case Kind::NonFinite:
            out << "non-finite entry at (" << row << "," << col << ")";
            return out.str();
        case Kind::NegativeEntry:
            out << "negative entry " << value << " at (" << row << "," << col << ")";
            return out.str();
        case Kind::NonzeroDiagonal:
            out << "nonzero diagonal " << value << " at (" << row << "," << row << ")";
            return out.str();
        case Kind::Asymmetry:
            out << "asymmetry at (" << row << "," << col << "): |d_ij - d_ji| = " << value;
            return out.str();
    }
    return "unknown violation";
}

MatrixValidationError::MatrixValidationError(std::vector<MatrixViolation> violations)
    : InvalidInput([&violations] {
          std::string msg = "distance matrix validation failed:";
          for (const auto &v : violations) {
              msg += "\n  - " + v.describe();
          }
          return msg;
      }()),
      violations_(std::move(violations)) {}

Series Series::from_points(std::size_t dim, std::vector<double> row_major) {
    if (dim == 0) throw InvalidInput("series dimension must be positive");
    if (row_major.size() % dim != 0)
        throw InvalidInput("series length is not a multiple of the dimension");
    for (double v : row_major) {
        if (!std::isfinite(v)) throw InvalidInput("series contains a non-finite value");
    }
    Series s;
    s.angular_ = false;
    s.dim_ = dim;
    s.count_ = row_major.size() / dim;
    s.values_ = std::move(row_major);
    return s;
}

Series Series::from_angles(std::vector<double> angles) {
    for (double v : angles) {
        if (!std::isfinite(v)) throw InvalidInput("series contains a non-finite angle");
    }
    Series s;
    s.angular_ = true;
    s.dim_ = 1;
    s.count_ = angles.size();
    s.values_ = std::move(angles);
    return s;
}

std::span<const double> Series::point(std::size_t t) const {
    if (angular_) throw InvalidInput("angular series has no coordinate points");
    return {values_.data() + t * dim_, dim_};
}

double Series::angle(std::size_t t) const {
    if (!angular_) throw InvalidInput("point series has no angles");
    return values_[t];
}

DistanceMatrix DistanceMatrix::unchecked(std::size_t n, std::vector<double> values) {
    DistanceMatrix d;
    d.n_ = n;
    d.values_ = std::move(values);
    return d;
}

DistanceMatrix DistanceMatrix::scaled(double c) const {
    std::vector<double> values(values_);
    for (double &v : values) v *= c;
    return unchecked(n_, std::move(values));
}

double circular_distance(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw InvalidInput("circular_distance: non-finite angle");
    const double diff = std::fabs(reduce_angle(a) - reduce_angle(b));
    return std::min(diff, kTwoPi - diff);
}

double euclidean_distance(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size() || u.empty())
        throw InvalidInput("euclidean_distance: dimension mismatch");
    double sq = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (!std::isfinite(u[k]) || !std::isfinite(v[k]))
            throw InvalidInput("euclidean_distance: non-finite coordinate");
        const double d = u[k] - v[k];
        sq += d * d;
    }
    return std::sqrt(sq);
}

DistanceMatrix pairwise_distance_matrix(const Series &series, MetricKind metric) {
    const std::size_t n = series.size();
    if (n == 0) throw InvalidInput("pairwise_distance_matrix: empty series");
    if (metric == MetricKind::Precomputed)
        throw InvalidInput("pairwise_distance_matrix: series carries no precomputed distances");
    if (metric == MetricKind::Circular && !series.angular())
        throw InvalidInput("circular metric requires an angular series");
    if (metric == MetricKind::Euclidean && series.angular())
        throw InvalidInput("euclidean metric requires a coordinate series");

    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = metric == MetricKind::Circular
                                 ? circular_distance(series.angle(i), series.angle(j))
                                 : euclidean_distance(series.point(i), series.point(j));
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    return DistanceMatrix::unchecked(n, std::move(values));
}

std::vector<MatrixViolation> find_matrix_violations(
    const std::vector<std::vector<double>> &raw) {
    std::vector<MatrixViolation> out;
    const std::size_t n = raw.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (raw[i].size() != n) {
            out.push_back({MatrixViolation::Kind::NotSquare, i, raw[i].size(),
                           static_cast<double>(n)});
        }
    }
    if (!out.empty()) return out;  // shape errors make index checks meaningless

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = raw[i][j];
            if (!std::isfinite(v)) {
                out.push_back({MatrixViolation::Kind::NonFinite, i, j, v});
                continue;
            }
            if (v < 0.0) out.push_back({MatrixViolation::Kind::NegativeEntry, i, j, v});
            if (i == j && v != 0.0)
                out.push_back({MatrixViolation::Kind::NonzeroDiagonal, i, j, v});
            if (j > i && std::isfinite(raw[j][i])) {
                const double gap = std::fabs(v - raw[j][i]);
                if (gap > kAsymmetryTolerance)
                    out.push_back({MatrixViolation::Kind::Asymmetry, i, j, gap});
            }
        }
    }
    return out;
}

DistanceMatrix validate_distance_matrix(const std::vector<std::vector<double>> &raw) {
    auto violations = find_matrix_violations(raw);
    if (!violations.empty()) throw MatrixValidationError(std::move(violations));

    const std::size_t n = raw.size();
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Within-tolerance asymmetry from text round-trips: average it away.
            const double d = 0.5 * (raw[i][j] + raw[j][i]);
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    return DistanceMatrix::unchecked(n, std::move(values));
}

}  // namespace bdcp
