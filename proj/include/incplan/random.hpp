#pragma once

#include <cstdint>
#include <random>

#include "incplan/geometry.hpp"

namespace incplan {

/// Mixes two 64-bit values into a well-spread seed (splitmix64 finalizer).
/// Unlike plain XOR, mixing is order sensitive, so derived seeds such as
/// (base, trial) and (trial, base) do not collide.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Deterministic random stream. std::mt19937_64 has a standard-specified
/// sequence, and doubles are derived from raw 64-bit draws, so every stream
/// is reproducible across platforms and compilers.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

    /// Uniform point in a rectangle (x drawn before y).
    Point2 uniform_in_rect(const AxisRect &r) {
        const double x = uniform(r.min.x, r.max.x);
        const double y = uniform(r.min.y, r.max.y);
        return {x, y};
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace incplan
