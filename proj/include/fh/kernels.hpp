#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fh/structure.hpp"

namespace fh::kernels {

// Exhaustive subset-sweep kernels. Each has an OpenMP-parallel variant and a
// serial reference; results are bit-identical (reductions are min/count/AND
// over integers). The unsuffixed entry points dispatch on fh::config().jobs.
// All of them require the swept element count to fit the configured search
// bound and raise search-bound otherwise.

// Relation masks restricted to sub-30-bit universes.
struct Rel32 {
    std::vector<std::uint32_t> masks;
    int universe; // number of elements

    static Rel32 of(const FiniteStructure& s);
    // delta of a subset: |mask| - #relations inside mask
    int delta(std::uint32_t mask) const;
};

struct SweepMin {
    int min_delta;                       // min over swept supersets
    long long minimizer_count;           // sets attaining the min
    std::uint32_t minimizer_intersection; // AND over all minimizers
    std::uint32_t min_mask;              // numerically least minimizer
};

// min of delta(fixed | S) over all S subseteq free.
SweepMin min_delta_over_supersets(const Rel32& r, std::uint32_t fixed, std::uint32_t free);
SweepMin min_delta_over_supersets_serial(const Rel32& r, std::uint32_t fixed,
                                         std::uint32_t free);
SweepMin min_delta_over_supersets_parallel(const Rel32& r, std::uint32_t fixed,
                                           std::uint32_t free);

// First (numerically least) subset with delta < 0, if any: the in-class sweep.
std::optional<std::uint32_t> negative_delta_subset(const Rel32& r);
std::optional<std::uint32_t> negative_delta_subset_serial(const Rel32& r);
std::optional<std::uint32_t> negative_delta_subset_parallel(const Rel32& r);

// Least proper X with |X| > head_arity and delta(X) <= delta(full): the
// intertwinedness sweep (a violation means delta(full/X) >= 0).
std::optional<std::uint32_t> intertwined_violation(const Rel32& r, int head_arity);
std::optional<std::uint32_t> intertwined_violation_serial(const Rel32& r, int head_arity);
std::optional<std::uint32_t> intertwined_violation_parallel(const Rel32& r, int head_arity);

// Least X with A subseteq X subseteq D violating
// delta(X/A) = delta(X & B1 / A) + delta(X & B2 / A).
std::optional<std::uint32_t> additivity_violation(const Rel32& r, std::uint32_t b1,
                                                  std::uint32_t b2, std::uint32_t a);
std::optional<std::uint32_t> additivity_violation_serial(const Rel32& r, std::uint32_t b1,
                                                         std::uint32_t b2, std::uint32_t a);
std::optional<std::uint32_t> additivity_violation_parallel(const Rel32& r, std::uint32_t b1,
                                                           std::uint32_t b2, std::uint32_t a);

// delta and dim for every subset of the universe (superset-min transform).
// Used by the small-scale pregeometry and transfer suites.
std::vector<std::int16_t> delta_table(const Rel32& r);
std::vector<std::int16_t> dim_table(const Rel32& r);
std::vector<std::int16_t> dim_table_serial(const Rel32& r);
std::vector<std::int16_t> dim_table_parallel(const Rel32& r);

void require_sweep_width(int bits);

} // namespace fh::kernels
