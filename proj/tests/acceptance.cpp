// Acceptance suite: runs every property suite at its pinned defaults and
// prints one pass/fail line per criterion. Criteria with a stated runtime
// budget fail when they exceed it.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>

#include "fh/suites.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    const std::map<std::string, double> budgets = {
        {"base-witness", 10.0},
        {"lift-chain", 60.0},
        {"submodularity", 30.0},
        {"pregeometry", 60.0},
    };

    fh::suites::SuiteOptions opts;
    opts.seed = 1;
    opts.count = 0; // suite defaults = the pinned acceptance counts

    bool all_ok = true;
    for (const auto& spec : fh::suites::all_suites()) {
        auto t0 = clock::now();
        fh::suites::SuiteResult r = spec.run(opts);
        double secs = std::chrono::duration<double>(clock::now() - t0).count();

        bool ok = r.passed;
        std::string note = r.detail;
        auto it = budgets.find(spec.name);
        if (it != budgets.end()) {
            if (secs > it->second) {
                ok = false;
                note += " [RUNTIME " + std::to_string(secs) + "s exceeds " +
                        std::to_string(it->second) + "s]";
            }
        }
        std::printf("%s %-20s %7.2fs  %s\n", ok ? "PASS" : "FAIL", spec.name.c_str(), secs,
                    note.c_str());
        if (!ok) {
            if (!r.counterexample.empty())
                std::printf("--- counterexample ---\n%s", r.counterexample.c_str());
            all_ok = false;
        }
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
