#include "bdcp/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bdcp {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : engine_(seed) {}

RngStream RngStream::derive(std::uint64_t seed, std::uint64_t stream_id) {
    return RngStream(mix64(mix64(seed) ^ mix64(stream_id + 0x517cc1b727220a95ULL)));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    // Rejection sampling over the largest multiple of bound.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x >= threshold) return x % bound;
    }
}

double RngStream::normal() {
    if (spare_normal_) {
        const double v = *spare_normal_;
        spare_normal_.reset();
        return v;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

double RngStream::student_t(int dof) {
    if (dof <= 0) throw std::invalid_argument("student_t: dof must be positive");
    double chisq = 0.0;
    for (int k = 0; k < dof; ++k) {
        const double z = normal();
        chisq += z * z;
    }
    return normal() / std::sqrt(chisq / static_cast<double>(dof));
}

double RngStream::cauchy() {
    // Ratio of independent normals; denominator is almost surely nonzero.
    double denom = 0.0;
    do {
        denom = normal();
    } while (denom == 0.0);
    return normal() / denom;
}

}  // namespace bdcp
