#pragma once

#include <vector>

#include "fh/structure.hpp"

namespace fh {

// Predimension delta(A) = |A| - r(A), dimension d(A) = min over supersets,
// self-sufficiency and its closure. dim and the closure are computed exactly
// at any universe size by a max-weight-closure reduction to min-cut; the
// exhaustive sweep oracles live in fh::kernels.

int delta(const FiniteStructure& m, const Bits& a);

// delta(B/A) = delta(A|B) - delta(A)
int delta_rel(const FiniteStructure& m, const Bits& b, const Bits& a);

struct DimWitness {
    int dim;
    Bits minimal_minimizer; // the self-sufficient closure of the input
};

int dim(const FiniteStructure& m, const Bits& a);
DimWitness dim_witness(const FiniteStructure& m, const Bits& a);

bool is_self_sufficient(const FiniteStructure& m, const Bits& a);

struct ClosureCertificate {
    Bits input;
    Bits closure;
    long long minimizers_examined;
    int dimension;
};

// Smallest self-sufficient superset. Sweep path (intersection of all
// delta-minimizing supersets) when the free part fits in 16 elements, the
// min-cut minimal-minimizer extraction otherwise; both exact.
ClosureCertificate self_sufficient_closure(const FiniteStructure& m, const Bits& a);

// Points whose addition keeps dim fixed: the pregeometry closure of N.
Bits d_closure(const FiniteStructure& m, const Bits& n);

bool is_d_closed(const FiniteStructure& m, const Bits& n);

// delta(X) >= 0 for every subset, i.e. dim(empty) = 0.
bool in_class(const FiniteStructure& m);

// Exhaustive in-class sweep (search-bound limited); the acceptance suite
// runs this where a criterion mandates the sweep route.
bool in_class_sweep(const FiniteStructure& m);

} // namespace fh
