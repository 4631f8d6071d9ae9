#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

#include "fh/error.hpp"

namespace fh {

// Element subsets of one structure. Fixed four-word storage: universes are
// capped at kMaxElems elements (structure construction enforces it).
class Bits {
public:
    static constexpr int kMaxElems = 256;
    static constexpr int kWords = kMaxElems / 64;

    Bits() : w_{} {}

    static Bits none() { return Bits(); }

    static Bits all(int n) {
        Bits b;
        for (int i = 0; i < n; ++i) b.set(i);
        return b;
    }

    static Bits of(const std::vector<int>& idx) {
        Bits b;
        for (int i : idx) b.set(i);
        return b;
    }

    static Bits single(int i) {
        Bits b;
        b.set(i);
        return b;
    }

    void set(int i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool empty() const { return !any(); }

    bool subset_of(const Bits& o) const {
        for (int k = 0; k < kWords; ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    bool intersects(const Bits& o) const {
        for (int k = 0; k < kWords; ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    Bits operator&(const Bits& o) const {
        Bits r;
        for (int k = 0; k < kWords; ++k) r.w_[k] = w_[k] & o.w_[k];
        return r;
    }
    Bits operator|(const Bits& o) const {
        Bits r;
        for (int k = 0; k < kWords; ++k) r.w_[k] = w_[k] | o.w_[k];
        return r;
    }
    // set difference
    Bits operator-(const Bits& o) const {
        Bits r;
        for (int k = 0; k < kWords; ++k) r.w_[k] = w_[k] & ~o.w_[k];
        return r;
    }
    Bits& operator|=(const Bits& o) {
        for (int k = 0; k < kWords; ++k) w_[k] |= o.w_[k];
        return *this;
    }
    Bits& operator&=(const Bits& o) {
        for (int k = 0; k < kWords; ++k) w_[k] &= o.w_[k];
        return *this;
    }

    auto operator<=>(const Bits& o) const = default;

    std::vector<int> to_indices() const {
        std::vector<int> out;
        for (int k = 0; k < kWords; ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                int b = std::countr_zero(w);
                out.push_back(k * 64 + b);
                w &= w - 1;
            }
        }
        return out;
    }

    // Only valid when every set bit is below 32; kernels use this fast path.
    std::uint32_t low32() const { return static_cast<std::uint32_t>(w_[0]); }

    static Bits from_low32(std::uint32_t m) {
        Bits b;
        b.w_[0] = m;
        return b;
    }

    std::size_t hash() const {
        std::size_t h = 0;
        for (auto w : w_) h = h * 1099511628211ULL + w;
        return h;
    }

private:
    std::array<std::uint64_t, kWords> w_;
};

} // namespace fh
