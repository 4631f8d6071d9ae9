#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "fh/predim.hpp"
#include "fh/structure.hpp"

namespace fh {

// The pregeometry defined by dim on a structure's universe, with a memoized
// rank table. The memo is plain state: keep one Matroid per worker (the
// semantics are identical either way since rank is pure).
class Matroid {
public:
    explicit Matroid(FiniteStructure source);

    const FiniteStructure& source() const { return source_; }
    int ground_size() const { return source_.size(); }

    int rank(const Bits& y) const;

    // {a : rank(Y+a) = rank(Y)}; idempotent and monotone.
    Bits closure(const Bits& y) const;

    // All Y with |Y| <= k and rank(Y) = |Y|, in mask order.
    std::vector<Bits> independent_sets(int k) const;

private:
    FiniteStructure source_;
    mutable std::unordered_map<std::size_t, int> memo_;
};

// The associated geometry: rank-0 points dropped, ~-classes collapsed
// (a ~ b iff b in cl{a}).
struct GeometryQuotient {
    std::vector<Bits> classes; // partition of ground minus cl(empty)
    Bits rank_zero;            // cl(empty)

    // rank of a set of classes = rank of the union of their members
    int class_rank(const Matroid& m, const std::vector<int>& class_indices) const;
};

GeometryQuotient associated_geometry(const Matroid& m);

// Bijection matching rank functions on every subset, or nullopt (exhaustive,
// so nullopt certifies non-isomorphism). Ground sizes <= 10.
std::optional<Embedding> pregeometry_isomorphic(const Matroid& m1, const Matroid& m2);

} // namespace fh
