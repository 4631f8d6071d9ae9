// Compares the OpenMP sweep kernels against their serial references on the
// workloads that dominate the suites: class sweeps, intertwinedness sweeps,
// dim tables and closure sweeps. Results are checked for agreement.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fh/amalgam.hpp"
#include "fh/exquisite.hpp"
#include "fh/kernels.hpp"
#include "fh/predim.hpp"
#include "fh/rng.hpp"
#include "fh/suites.hpp"

using namespace fh;

namespace {

template <typename F>
double time_of(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial, double parallel, bool agree) {
    std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", name, serial,
                parallel, parallel > 0 ? serial / parallel : 0.0,
                agree ? "agree" : "DISAGREE");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel entry points fall back to serial\n");
#endif

    // arity-5 witness: 22-point intertwinedness sweep (2^22 subsets)
    {
        const AtomicType& q5 = exquisite_for_arity(5);
        auto r = kernels::Rel32::of(canonical_structure(q5));
        std::optional<std::uint32_t> vs, vp;
        double ts = time_of([&] { vs = kernels::intertwined_violation_serial(r, 5); });
        double tp = time_of([&] { vp = kernels::intertwined_violation_parallel(r, 5); });
        report("intertwined 2^22", ts, tp, vs == vp);
    }

    // class sweep over a ~22-point host built from disjoint class members
    {
        SplitMix64 rng(7);
        FiniteStructure big = suites::random_class_member(rng, SymmetryGroup::full(3), 11, 25, "b");
        while (big.size() < 20) {
            int room = 22 - big.size();
            FiniteStructure extra = suites::random_class_member(
                rng, SymmetryGroup::full(3), std::min(room, 8), 25, "c");
            if (extra.size() == 0 || extra.size() > room) continue;
            auto parts = free_union_rename({big, extra}, {});
            big = simple_amalgam(parts[0], parts[1], {});
        }
        auto r = kernels::Rel32::of(big);
        std::optional<std::uint32_t> vs, vp;
        double ts = time_of([&] { vs = kernels::negative_delta_subset_serial(r); });
        double tp = time_of([&] { vp = kernels::negative_delta_subset_parallel(r); });
        report(("class sweep 2^" + std::to_string(big.size())).c_str(), ts, tp, vs == vp);
    }

    // dim table on a ~20-point structure
    {
        SplitMix64 rng(11);
        FiniteStructure big = suites::random_class_member(rng, SymmetryGroup::full(3), 10, 30, "d");
        while (big.size() < 18) {
            int room = 20 - big.size();
            FiniteStructure extra = suites::random_class_member(
                rng, SymmetryGroup::full(3), std::min(room, 8), 30, "e");
            if (extra.size() == 0 || extra.size() > room) continue;
            auto parts = free_union_rename({big, extra}, {});
            big = simple_amalgam(parts[0], parts[1], {});
        }
        auto r = kernels::Rel32::of(big);
        std::vector<std::int16_t> ts_v, tp_v;
        double ts = time_of([&] { ts_v = kernels::dim_table_serial(r); });
        double tp = time_of([&] { tp_v = kernels::dim_table_parallel(r); });
        report(("dim table 2^" + std::to_string(big.size())).c_str(), ts, tp, ts_v == tp_v);
    }

    // closure minimizer sweep, 16 free elements
    {
        SplitMix64 rng(13);
        FiniteStructure m =
            suites::random_class_member(rng, SymmetryGroup::full(3), 16, 30, "f");
        while (m.size() < 16)
            m = suites::random_class_member(rng, SymmetryGroup::full(3), 16, 30, "f");
        auto r = kernels::Rel32::of(m);
        kernels::SweepMin ss{}, sp{};
        double ts = time_of([&] { ss = kernels::min_delta_over_supersets_serial(r, 0, (1u << m.size()) - 1); });
        double tp = time_of([&] { sp = kernels::min_delta_over_supersets_parallel(r, 0, (1u << m.size()) - 1); });
        bool agree = ss.min_delta == sp.min_delta && ss.minimizer_count == sp.minimizer_count &&
                     ss.minimizer_intersection == sp.minimizer_intersection &&
                     ss.min_mask == sp.min_mask;
        report("closure sweep 2^16", ts, tp, agree);
    }
    return 0;
}
