#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fh/rng.hpp"
#include "fh/structure.hpp"

namespace fh::suites {

struct SuiteResult {
    std::string name;
    bool passed;
    std::string detail;       // one-line summary
    std::string counterexample; // serialized first failure, empty when passed
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    int count = 0; // 0 = suite default
};

using SuiteFn = std::function<SuiteResult(const SuiteOptions&)>;

struct SuiteSpec {
    std::string name;
    SuiteFn run;
};

// The property suites backing the acceptance criteria, in fixed order.
const std::vector<SuiteSpec>& all_suites();

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

// Random-instance generators shared by suites and tests. All deterministic
// in the SplitMix64 stream.
FiniteStructure random_structure(SplitMix64& rng, const SymmetryGroup& g, int max_size,
                                 int percent_density, const std::string& name);
FiniteStructure random_class_member(SplitMix64& rng, const SymmetryGroup& g, int max_size,
                                    int percent_density, const std::string& name);

} // namespace fh::suites
