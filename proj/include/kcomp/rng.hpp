#pragma once

#include <cstdint>

namespace kcomp {

/// 64-bit linear congruential generator, constants from Knuth's MMIX
/// (a = 6364136223846793005, c = 1442695040888963407). Chosen over
/// std::mt19937 so that seeded runs are bit-identical across platforms
/// and standard libraries.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

}  // namespace kcomp
