#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace bdcp {

// Deterministic random stream. All draws are built on top of the
// standard-defined mt19937_64 sequence with hand-rolled transforms, so the
// same (seed, stream) pair reproduces the same values on every platform
// and standard library.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed);

    // Child stream keyed by (seed, stream_id); streams with distinct ids are
    // statistically independent and order-free.
    static RngStream derive(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    // Uniform on [0, 1).
    double uniform();
    // Uniform on [lo, hi).
    double uniform(double lo, double hi);
    // Unbiased uniform integer in [0, bound); bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Standard normal via Box-Muller (second value cached).
    double normal();
    // Student t with the given degrees of freedom.
    double student_t(int dof);
    // Standard Cauchy.
    double cauchy();

  private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

// SplitMix64 finalizer; used for seed derivation.
std::uint64_t mix64(std::uint64_t x);

}  // namespace bdcp
