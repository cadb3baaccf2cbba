#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdcp {

// Observation range with exclusive lower boundary and inclusive upper
// boundary in 1-based time, i.e. the half-open index range [start, end)
// over 0-based storage. Boundaries double as change-point positions.
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - start; }
    auto operator<=>(const Segment &) const = default;
};

// Maximizing split for one segment: boundary `split` of the best candidate,
// the scan window ending at boundary `window_end`, and the statistic value.
struct SegmentBest {
    std::size_t split = 0;
    std::size_t window_end = 0;
    double value = 0.0;
};

class InvalidInput : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct MatrixViolation {
    enum class Kind {
        NotSquare,
        NonFinite,
        NegativeEntry,
        NonzeroDiagonal,
        Asymmetry,
    };

    Kind kind = Kind::NotSquare;
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;

    std::string describe() const;
};

class MatrixValidationError : public InvalidInput {
  public:
    explicit MatrixValidationError(std::vector<MatrixViolation> violations);

    const std::vector<MatrixViolation> &violations() const { return violations_; }

  private:
    std::vector<MatrixViolation> violations_;
};

}  // namespace bdcp
