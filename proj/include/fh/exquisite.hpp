#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fh/structure.hpp"

namespace fh {

// A complete quantifier-free symmetric atomic type q(head; tail): relations
// are orbit sets over variable indices 0..n+l-1 under full symmetry, with
// head indices 0..n-1. Carries t_q = |relations| and d_q = (n+l) - t_q.
struct AtomicType {
    std::string name;
    int arity = 0;    // n = head length
    int tail_len = 0; // l
    std::vector<OrbitTuple> relations; // canonical (sorted entries), sorted

    int var_count() const { return arity + tail_len; }
    int t_q() const { return static_cast<int>(relations.size()); }
    int d_q() const { return var_count() - t_q(); }

    void validate() const; // index ranges, distinct entries, head orbit absent
};

// An assignment of the type's variables to distinct host elements.
struct TypedTuple {
    std::vector<int> head;
    std::vector<int> tail;

    std::vector<int> all() const;
    Bits mask() const;
    auto operator<=>(const TypedTuple&) const = default;
};

struct CollisionReport {
    long long c = 0; // collisions: q-hat realization pairs with meeting generated sets
    long long w = 0; // weak collisions: the q-plus analogue
    std::vector<std::pair<TypedTuple, TypedTuple>> witnesses;
};

// The structure on n+l points realizing exactly q, group S_n. Head points
// are named a1..an, tail points b1..bl.
FiniteStructure canonical_structure(const AtomicType& q);

// Reads the type back off a structure along a variable assignment.
AtomicType type_of(const FiniteStructure& m, const TypedTuple& at, int arity,
                   const std::string& name = "");

// G(head;tail): the orbit set obtained by substituting host elements for
// variable indices. |result| = t_q since entries are distinct.
std::vector<OrbitTuple> generated_set(const AtomicType& q, const TypedTuple& t);

bool check_nice(const AtomicType& q);

struct IntertwinedCheck {
    bool ok;
    std::optional<Bits> witness; // proper X, |X| > n, with delta(full/X) >= 0
};
IntertwinedCheck check_intertwined(const AtomicType& q);

// Canonical structure has no non-trivial automorphism.
bool check_without_symmetry(const AtomicType& q);

bool check_exquisite(const AtomicType& q);

// The explicit 11-point arity-3 witness.
AtomicType base_exquisite_3();

// Arity k -> k+1 lift; output is machine re-verified exquisite
// (lift-verification error otherwise, never emitted unchecked).
AtomicType lift_exquisite(const AtomicType& q);

// Base case plus (n-3) lifts; memoized.
const AtomicType& exquisite_for_arity(int n);

// All q-hat realizations in M (exact induced pattern = q, plus the overlap
// guard psi^q against every q-plus realization). Host group must be S_n.
std::vector<TypedTuple> realizations(const FiniteStructure& m, const AtomicType& q);

// Positive-part-only realizations (q-plus): listed orbits present, nothing
// else required.
std::vector<TypedTuple> positive_realizations(const FiniteStructure& m, const AtomicType& q);

CollisionReport collisions(const FiniteStructure& m, const AtomicType& q);

struct AdjacencyVerdict {
    bool chain;
    bool loop;
    bool proper;
};

// Literal evaluation of the R-adjacency chain / loop / properness clauses
// for a sequence of distinct q-hat tuples.
AdjacencyVerdict is_adjacency_loop(const FiniteStructure& m, const AtomicType& q,
                                   const std::vector<OrbitTuple>& r,
                                   const std::vector<TypedTuple>& seq);

// Orbits covered by exactly one q-hat realization that itself appears in a
// collision: the handles consumed by decollide steps.
std::vector<std::pair<OrbitTuple, TypedTuple>> find_unique_orbits(const FiniteStructure& m,
                                                                  const AtomicType& q);

// One collision-elimination step: delete the lex-least q-hat-unique orbit,
// re-realize its head over a fresh tail. Strictly decreases w, preserves
// class membership and q-hat-positive heads.
FiniteStructure decollide_step(const FiniteStructure& a, const AtomicType& q);

// Iterate decollide_step until c = 0.
FiniteStructure decollide(const FiniteStructure& a, const AtomicType& q);

} // namespace fh
