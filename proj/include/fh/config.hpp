#pragma once

#include <cstdlib>
#include <string>

#include "fh/error.hpp"

namespace fh {

// Exhaustive-search budget. `bound` caps the number of free elements any
// full subset sweep may range over; exceeding it is a hard error, never a
// silent approximation. 28 is the absolute ceiling (2^28 masks).
struct Config {
    static constexpr int kHardBound = 28;
    static constexpr int kDefaultBound = 24;

    int bound = kDefaultBound;
    int jobs = 0; // 0 = use all available threads

    void set_bound(int b) {
        if (b < 0 || b > kHardBound)
            err::raise("bound", "search bound must be in 0.." + std::to_string(kHardBound));
        bound = b;
    }
};

inline Config& config() {
    static Config cfg = [] {
        Config c;
        if (const char* env = std::getenv("FH_BOUND")) {
            c.set_bound(std::atoi(env));
        }
        return c;
    }();
    return cfg;
}

} // namespace fh
