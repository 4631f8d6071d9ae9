#include "fh/kernels.hpp"

#include <bit>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fh/config.hpp"
#include "fh/error.hpp"

namespace fh::kernels {

void require_sweep_width(int bits) {
    if (bits > config().bound)
        err::raise("search-bound", "sweep over " + std::to_string(bits) +
                                       " elements exceeds bound " +
                                       std::to_string(config().bound));
}

Rel32 Rel32::of(const FiniteStructure& s) {
    if (s.size() > 30) err::raise("search-bound", "universe too large for mask sweeps");
    Rel32 r;
    r.universe = s.size();
    r.masks.reserve(s.relations().size());
    for (const auto& m : s.relation_masks()) r.masks.push_back(m.low32());
    return r;
}

int Rel32::delta(std::uint32_t mask) const {
    int inside = 0;
    for (std::uint32_t rm : masks) inside += ((rm & ~mask) == 0);
    return std::popcount(mask) - inside;
}

namespace {

// Positions of the set bits of `free`, for compressed subset expansion.
std::vector<std::uint32_t> bit_masks(std::uint32_t free) {
    std::vector<std::uint32_t> out;
    while (free) {
        out.push_back(free & -free);
        free &= free - 1;
    }
    return out;
}

inline std::uint32_t expand(std::uint64_t compressed, const std::vector<std::uint32_t>& bits) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if ((compressed >> i) & 1) m |= bits[i];
    return m;
}

int threads_for(std::uint64_t work) {
#ifdef _OPENMP
    if (work < (1u << 12)) return 1;
    int j = config().jobs;
    return j > 0 ? j : omp_get_max_threads();
#else
    (void)work;
    return 1;
#endif
}

} // namespace

SweepMin min_delta_over_supersets_serial(const Rel32& r, std::uint32_t fixed,
                                         std::uint32_t free) {
    auto bits = bit_masks(free);
    require_sweep_width(static_cast<int>(bits.size()));
    std::uint64_t total = std::uint64_t{1} << bits.size();
    SweepMin out{std::numeric_limits<int>::max(), 0, 0xFFFFFFFFu, 0};
    for (std::uint64_t c = 0; c < total; ++c) {
        std::uint32_t mask = fixed | expand(c, bits);
        int d = r.delta(mask);
        if (d < out.min_delta) {
            out.min_delta = d;
            out.minimizer_count = 1;
            out.minimizer_intersection = mask;
            out.min_mask = mask;
        } else if (d == out.min_delta) {
            ++out.minimizer_count;
            out.minimizer_intersection &= mask;
            if (mask < out.min_mask) out.min_mask = mask;
        }
    }
    return out;
}

SweepMin min_delta_over_supersets_parallel(const Rel32& r, std::uint32_t fixed,
                                           std::uint32_t free) {
    auto bits = bit_masks(free);
    require_sweep_width(static_cast<int>(bits.size()));
    const std::uint64_t total = std::uint64_t{1} << bits.size();
    int best = std::numeric_limits<int>::max();
#pragma omp parallel for reduction(min : best) num_threads(threads_for(total)) \
    schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(total); ++c) {
        int d = r.delta(fixed | expand(static_cast<std::uint64_t>(c), bits));
        if (d < best) best = d;
    }
    long long count = 0;
    std::uint32_t inter = 0xFFFFFFFFu;
    std::uint32_t least = 0xFFFFFFFFu;
#pragma omp parallel for reduction(+ : count) reduction(& : inter) reduction(min : least) \
    num_threads(threads_for(total)) schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(total); ++c) {
        std::uint32_t mask = fixed | expand(static_cast<std::uint64_t>(c), bits);
        if (r.delta(mask) == best) {
            ++count;
            inter &= mask;
            if (mask < least) least = mask;
        }
    }
    return SweepMin{best, count, inter, least};
}

SweepMin min_delta_over_supersets(const Rel32& r, std::uint32_t fixed, std::uint32_t free) {
#ifdef _OPENMP
    return min_delta_over_supersets_parallel(r, fixed, free);
#else
    return min_delta_over_supersets_serial(r, fixed, free);
#endif
}

namespace {

// Shared scan skeleton: least mask in [0, 2^universe) satisfying `bad`.
template <typename F>
std::optional<std::uint32_t> least_violation_serial(int universe, F bad) {
    require_sweep_width(universe);
    std::uint64_t total = std::uint64_t{1} << universe;
    for (std::uint64_t m = 0; m < total; ++m)
        if (bad(static_cast<std::uint32_t>(m))) return static_cast<std::uint32_t>(m);
    return std::nullopt;
}

template <typename F>
std::optional<std::uint32_t> least_violation_parallel(int universe, F bad) {
    require_sweep_width(universe);
    const std::uint64_t total = std::uint64_t{1} << universe;
    std::uint64_t least = total;
#pragma omp parallel for reduction(min : least) num_threads(threads_for(total)) \
    schedule(static)
    for (std::int64_t m = 0; m < static_cast<std::int64_t>(total); ++m) {
        if (static_cast<std::uint64_t>(m) < least && bad(static_cast<std::uint32_t>(m)))
            least = static_cast<std::uint64_t>(m);
    }
    if (least == total) return std::nullopt;
    return static_cast<std::uint32_t>(least);
}

template <typename F>
std::optional<std::uint32_t> least_violation(int universe, F bad) {
#ifdef _OPENMP
    return least_violation_parallel(universe, bad);
#else
    return least_violation_serial(universe, bad);
#endif
}

} // namespace

std::optional<std::uint32_t> negative_delta_subset_serial(const Rel32& r) {
    return least_violation_serial(r.universe, [&](std::uint32_t m) { return r.delta(m) < 0; });
}

std::optional<std::uint32_t> negative_delta_subset_parallel(const Rel32& r) {
    return least_violation_parallel(r.universe, [&](std::uint32_t m) { return r.delta(m) < 0; });
}

std::optional<std::uint32_t> negative_delta_subset(const Rel32& r) {
    return least_violation(r.universe, [&](std::uint32_t m) { return r.delta(m) < 0; });
}

namespace {

struct IntertwinedBad {
    const Rel32& r;
    int head;
    int delta_full;
    std::uint32_t full;

    bool operator()(std::uint32_t m) const {
        if (m == full || std::popcount(m) <= head) return false;
        return r.delta(m) <= delta_full; // delta(full/X) >= 0
    }
};

} // namespace

std::optional<std::uint32_t> intertwined_violation_serial(const Rel32& r, int head_arity) {
    std::uint32_t full = (r.universe == 32) ? 0xFFFFFFFFu : ((1u << r.universe) - 1);
    return least_violation_serial(r.universe, IntertwinedBad{r, head_arity, r.delta(full), full});
}

std::optional<std::uint32_t> intertwined_violation_parallel(const Rel32& r, int head_arity) {
    std::uint32_t full = (r.universe == 32) ? 0xFFFFFFFFu : ((1u << r.universe) - 1);
    return least_violation_parallel(r.universe,
                                    IntertwinedBad{r, head_arity, r.delta(full), full});
}

std::optional<std::uint32_t> intertwined_violation(const Rel32& r, int head_arity) {
    std::uint32_t full = (r.universe == 32) ? 0xFFFFFFFFu : ((1u << r.universe) - 1);
    return least_violation(r.universe, IntertwinedBad{r, head_arity, r.delta(full), full});
}

namespace {

struct AdditivityBad {
    const Rel32& r;
    std::uint32_t b1, b2, a;
    int delta_a;

    bool operator()(std::uint32_t x) const {
        if ((a & ~x) != 0) return false; // only X containing A
        int lhs = r.delta(x) - delta_a;
        int rhs = (r.delta(x & b1) - delta_a) + (r.delta(x & b2) - delta_a);
        return lhs != rhs;
    }
};

} // namespace

std::optional<std::uint32_t> additivity_violation_serial(const Rel32& r, std::uint32_t b1,
                                                         std::uint32_t b2, std::uint32_t a) {
    return least_violation_serial(r.universe, AdditivityBad{r, b1, b2, a, r.delta(a)});
}

std::optional<std::uint32_t> additivity_violation_parallel(const Rel32& r, std::uint32_t b1,
                                                           std::uint32_t b2, std::uint32_t a) {
    return least_violation_parallel(r.universe, AdditivityBad{r, b1, b2, a, r.delta(a)});
}

std::optional<std::uint32_t> additivity_violation(const Rel32& r, std::uint32_t b1,
                                                  std::uint32_t b2, std::uint32_t a) {
    return least_violation(r.universe, AdditivityBad{r, b1, b2, a, r.delta(a)});
}

std::vector<std::int16_t> delta_table(const Rel32& r) {
    require_sweep_width(r.universe);
    if (r.universe > 25) err::raise("search-bound", "delta table too large");
    std::size_t total = std::size_t{1} << r.universe;
    std::vector<std::int16_t> inside(total, 0);
    for (std::uint32_t rm : r.masks) ++inside[rm];
    // subset-sum transform: inside[m] = #relations contained in m
    for (int b = 0; b < r.universe; ++b) {
        std::uint32_t bit = 1u << b;
        for (std::size_t m = 0; m < total; ++m)
            if (m & bit) inside[m] = static_cast<std::int16_t>(inside[m] + inside[m ^ bit]);
    }
    std::vector<std::int16_t> out(total);
    for (std::size_t m = 0; m < total; ++m)
        out[m] = static_cast<std::int16_t>(std::popcount(static_cast<std::uint32_t>(m)) -
                                           inside[m]);
    return out;
}

namespace {

std::vector<std::int16_t> dim_from_delta(std::vector<std::int16_t> t, int universe,
                                         bool parallel) {
    const std::size_t total = t.size();
    // superset-min transform
    for (int b = 0; b < universe; ++b) {
        std::uint32_t bit = 1u << b;
        if (parallel) {
#pragma omp parallel for num_threads(threads_for(total)) schedule(static)
            for (std::int64_t m = 0; m < static_cast<std::int64_t>(total); ++m) {
                if (!(m & bit) && t[m | bit] < t[m]) t[m] = t[m | bit];
            }
        } else {
            for (std::size_t m = 0; m < total; ++m)
                if (!(m & bit) && t[m | bit] < t[m]) t[m] = t[m | bit];
        }
    }
    return t;
}

} // namespace

std::vector<std::int16_t> dim_table_serial(const Rel32& r) {
    return dim_from_delta(delta_table(r), r.universe, false);
}

std::vector<std::int16_t> dim_table_parallel(const Rel32& r) {
    return dim_from_delta(delta_table(r), r.universe, true);
}

std::vector<std::int16_t> dim_table(const Rel32& r) {
#ifdef _OPENMP
    return dim_table_parallel(r);
#else
    return dim_table_serial(r);
#endif
}

} // namespace fh::kernels
