#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bdcp/types.hpp"

namespace bdcp {

enum class MetricKind {
    Euclidean,
    Circular,
    Precomputed,
};

const char *metric_name(MetricKind m);

// Ordered sequence of observations: either points in R^d or angles in
// radians. Homogeneous by construction.
class Series {
  public:
    Series() = default;

    // row_major has size() == dim * count; every entry must be finite.
    static Series from_points(std::size_t dim, std::vector<double> row_major);
    static Series from_angles(std::vector<double> angles);

    bool angular() const { return angular_; }
    std::size_t size() const { return count_; }
    std::size_t dim() const { return dim_; }

    std::span<const double> point(std::size_t t) const;
    double angle(std::size_t t) const;

    const std::vector<double> &raw() const { return values_; }

  private:
    bool angular_ = false;
    std::size_t dim_ = 0;
    std::size_t count_ = 0;
    std::vector<double> values_;
};

// Symmetric nonnegative matrix of pairwise distances with zero diagonal.
// Immutable once built; safe to share across threads.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * n_, n_};
    }

    // Every entry multiplied by c (c > 0 preserves the invariants).
    DistanceMatrix scaled(double c) const;

    // Trusted constructor: `values` must already satisfy the invariants.
    static DistanceMatrix unchecked(std::size_t n, std::vector<double> values);

  private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

// Geodesic distance on the unit circle; inputs are reduced mod 2*pi first,
// so shifted encodings such as [0, 4*pi) compare correctly. Result in [0, pi].
double circular_distance(double a, double b);

// L2 distance; spans must have equal nonzero dimension and finite entries.
double euclidean_distance(std::span<const double> u, std::span<const double> v);

// Distance matrix of a series under the chosen metric. The series kind must
// match the metric (points for Euclidean, angles for Circular).
DistanceMatrix pairwise_distance_matrix(const Series &series, MetricKind metric);

// Checks a raw square matrix against the distance-matrix invariants and
// reports every violation with its indices. Asymmetry within 1e-9 absolute
// is tolerated (and later symmetrized by averaging).
std::vector<MatrixViolation> find_matrix_violations(
    const std::vector<std::vector<double>> &raw);

// Validated construction from user input; throws MatrixValidationError with
// the full violation list on failure. Near-symmetric entries are averaged.
DistanceMatrix validate_distance_matrix(const std::vector<std::vector<double>> &raw);

}  // namespace bdcp
