#pragma once

#include <optional>

#include "fh/structure.hpp"

namespace fh {

// Free join of B1 and B2 over their common part A: universe union, relation
// union. Universes must intersect exactly in A (overlap-not-base otherwise);
// callers disjointify with free_union_rename first.
FiniteStructure simple_amalgam(const FiniteStructure& b1, const FiniteStructure& b2,
                               const std::vector<std::string>& a);

FiniteStructure iterated_amalgam(const std::vector<FiniteStructure>& parts,
                                 const std::vector<std::string>& a);

struct AmalgamCheck {
    bool ok;
    std::optional<Bits> counterexample; // X in D violating additivity
};

// Checks delta(X/A) = delta(X&B1/A) + delta(X&B2/A) for every A <= X <= D,
// over a claimed amalgam D of B1 and B2.
AmalgamCheck verify_simple_amalgam(const FiniteStructure& d, const FiniteStructure& b1,
                                   const FiniteStructure& b2,
                                   const std::vector<std::string>& a);

} // namespace fh
