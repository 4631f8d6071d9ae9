#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fh/structure.hpp"

namespace fh {

// One extension template: a structure B with a distinguished self-sufficient
// base A (as a mask into B).
struct CatalogEntry {
    FiniteStructure b;
    Bits a_mask;

    int base_size() const { return a_mask.count(); }
    FiniteStructure base() const { return b.induced(a_mask); }
};

// All isomorphism types of pairs A <= B with |B| <= size_bound over the
// given group, deduplicated by pair-canonical form, deterministic order.
std::vector<CatalogEntry> build_catalog(const SymmetryGroup& group, int size_bound);

struct BuildStep {
    int step;
    int catalog_index;
    std::vector<std::string> base_image;     // names in the chain member
    std::vector<std::string> fresh_elements; // names added by the join
    bool applied;                            // false = no strong base image existed
};

struct GenericBuildState {
    SymmetryGroup group;
    int size_bound = 0;
    std::uint64_t seed = 0;
    std::vector<CatalogEntry> catalog;
    std::vector<FiniteStructure> chain; // chain[i] strong in chain[i+1]
    std::vector<BuildStep> log;

    const FiniteStructure& result() const { return chain.back(); }
};

// Finite approximant of the generic structure: start from the empty
// structure and repeatedly free-join a scheduled template over a scheduled
// strong base image. Deterministic given (group, size_bound, steps, seed).
GenericBuildState build_generic(const SymmetryGroup& group, int size_bound, int steps,
                                std::uint64_t seed);

// Strong embedding of C into M fixing A pointwise (backtracking, complete:
// nullopt certifies non-realization). A must be self-sufficient in M and C
// must induce M's structure on A.
std::optional<Embedding> extension_property_test(const FiniteStructure& m, const Bits& a,
                                                 const FiniteStructure& c);

struct AuditRow {
    std::vector<std::string> base_elements;
    int catalog_index;
    bool realized;
};

struct AuditReport {
    std::vector<AuditRow> rows;
    std::string to_text() const;
};

// Enumerates every self-sufficient A with |A| <= max_base and every catalog
// template with |B| <= max_ext whose base matches A's isomorphism type;
// reports which pairs are realized.
AuditReport audit_genericity(const FiniteStructure& m, const std::vector<CatalogEntry>& catalog,
                             int max_base, int max_ext);

} // namespace fh
