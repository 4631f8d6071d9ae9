#pragma once

#include <cstdint>

namespace fh {

// SplitMix64. Fixed generator so every seeded suite reproduces bit-for-bit
// across platforms and implementations (documented in the README).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform-enough draw in [0, n); n = 0 yields 0.
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::uint64_t state_;
};

} // namespace fh
