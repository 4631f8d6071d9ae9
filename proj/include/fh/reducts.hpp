#pragma once

#include <utility>

#include "fh/exquisite.hpp"
#include "fh/structure.hpp"

namespace fh {

enum class ReductKind { Subgroup, Exquisite };

// Same universe; relations are the G-closures of the H-orbits (H <= G).
FiniteStructure phi_reduct(const FiniteStructure& m, const SymmetryGroup& g);

// Same universe, trivial group; ordered relations are the heads of the
// q-hat realizations of M.
FiniteStructure exquisite_reduct(const FiniteStructure& m, const AtomicType& q);

// reduct(M|A) equals reduct(M)|A. For the subgroup reduct this holds for
// every A; the exquisite reduct needs A self-sufficient, but non-strong A is
// accepted so tests can build negative witnesses.
bool check_encloses(const FiniteStructure& m, const Bits& a, ReductKind kind,
                    const SymmetryGroup* g = nullptr, const AtomicType* q = nullptr);

// reduct of a class member lands in the target class.
bool check_reduces_class(const FiniteStructure& a, ReductKind kind,
                         const SymmetryGroup* g = nullptr, const AtomicType* q = nullptr);

// A strong in the source sense stays strong in the reduct.
bool check_stronger(const FiniteStructure& m, const Bits& a, ReductKind kind,
                    const SymmetryGroup* g = nullptr, const AtomicType* q = nullptr);

// Given an H-structure A and a G-structure B with phi_reduct(A) strong in B:
// an H-structure C on B's universe with A strong in C and phi_reduct(C) = B.
// Sections pick the lex-least ordered member per new G-orbit.
FiniteStructure mixed_amalgam_subgroup(const FiniteStructure& a, const FiniteStructure& b);

// Given a sym-structure A and a trivial-group B with exquisite_reduct(A)
// strong in B: a sym-structure C adding one fresh tail per new head of B,
// with A strong in C and exquisite_reduct(C) = B (both verified).
FiniteStructure mixed_amalgam_exquisite(const FiniteStructure& a, const FiniteStructure& b,
                                        const AtomicType& q);

// F plus n fresh points carrying one H-orbit, versus the same plus the
// sigma-twisted second orbit for some sigma in G minus H. Non-isomorphic
// over F, with equal phi-reducts.
std::pair<FiniteStructure, FiniteStructure> benign_pair_subgroup(const FiniteStructure& f,
                                                                 const SymmetryGroup& g);

// F plus n fresh points, with and without the fresh orbit; exquisite reducts
// coincide by realization confinement.
std::pair<FiniteStructure, FiniteStructure> benign_pair_exquisite(const FiniteStructure& f,
                                                                  const AtomicType& q);

} // namespace fh
