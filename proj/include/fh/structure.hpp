#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fh/bits.hpp"
#include "fh/group.hpp"

namespace fh {

// Canonical representative of a G-orbit of a distinct-entry n-tuple.
// Entries are dense indices into the owning structure's universe.
struct OrbitTuple {
    std::vector<int> entries;

    auto operator<=>(const OrbitTuple&) const = default;
};

// A finite relational structure with group symmetry: ordered universe of
// named elements, one n-ary relation stored as a sorted set of canonical
// orbit tuples. Immutable after construction; all operations return fresh
// values.
class FiniteStructure {
public:
    FiniteStructure() = default;
    FiniteStructure(std::string name, SymmetryGroup group,
                    std::vector<std::string> elements,
                    const std::vector<std::vector<std::string>>& relations);

    // Index-based construction; `relations` entries may be any orbit member.
    static FiniteStructure from_indices(std::string name, SymmetryGroup group,
                                        std::vector<std::string> elements,
                                        const std::vector<std::vector<int>>& relations);

    const std::string& name() const { return name_; }
    const SymmetryGroup& group() const { return group_; }
    int arity() const { return group_.arity(); }
    int size() const { return static_cast<int>(elems_.size()); }

    const std::vector<std::string>& elements() const { return elems_; }
    const std::string& element(int i) const { return elems_[i]; }
    bool has_element(const std::string& name) const { return index_.count(name) > 0; }
    int index_of(const std::string& name) const; // throws unknown-element

    const std::vector<OrbitTuple>& relations() const { return rels_; }
    const std::vector<Bits>& relation_masks() const { return rel_masks_; }
    int relation_count() const { return static_cast<int>(rels_.size()); }
    bool has_orbit(const OrbitTuple& canonical) const;

    Bits universe_mask() const { return Bits::all(size()); }
    Bits mask_of(const std::vector<std::string>& names) const;
    std::vector<std::string> names_of(const Bits& mask) const;

    // Relations lying entirely inside `mask`.
    int relations_inside(const Bits& mask) const;

    // Incident orbit count per element.
    const std::vector<int>& degrees() const { return degrees_; }

    FiniteStructure induced(const Bits& mask, const std::string& name = "") const;
    FiniteStructure renamed(const std::map<std::string, std::string>& map,
                            const std::string& name = "") const;
    FiniteStructure with_name(const std::string& name) const;

    // Semantic equality: group, universe names, relation sets. Labels ignored.
    bool equal(const FiniteStructure& o) const;

    // Name-independent encoding; two structures are isomorphic iff their
    // canonical encodings agree. Cost |U|! — for catalog-sized structures.
    std::string canonical_encoding() const;
    // Same, with a distinguished subset carried along (pair isomorphism).
    std::string canonical_encoding_with(const Bits& marked) const;

private:
    void finish(const std::vector<std::vector<int>>& raw);

    std::string name_;
    SymmetryGroup group_;
    std::vector<std::string> elems_; // sorted, unique
    std::unordered_map<std::string, int> index_;
    std::vector<OrbitTuple> rels_; // canonical, sorted, unique
    std::vector<Bits> rel_masks_;
    std::vector<int> degrees_;
};

// Lex-least member of the orbit of `raw` under `group`. Errors:
// duplicate-entry, arity-mismatch.
std::vector<int> canonicalize(const SymmetryGroup& group, const std::vector<int>& raw);

// The substructure of M with universe S; relations are exactly those of M
// with all entries in S.
FiniteStructure induced_substructure(const FiniteStructure& m, const Bits& s);

// Renames the non-shared part of each structure so the parts pairwise
// intersect exactly in `shared`. The induced structures on `shared` must
// agree (shared-mismatch otherwise). Structure preserved up to renaming.
std::vector<FiniteStructure> free_union_rename(const std::vector<FiniteStructure>& parts,
                                               const std::vector<std::string>& shared);

// Injective structure map; preserves and reflects relations when checked.
struct Embedding {
    std::map<std::string, std::string> map;
};

// Checks that f embeds `source` into `target` as an induced substructure:
// injective, and relations between mapped elements correspond exactly.
bool is_induced_embedding(const FiniteStructure& source, const FiniteStructure& target,
                          const std::map<std::string, std::string>& f);

// Isomorphism search fixing `fixed` (names present in both) pointwise.
// Exhaustive; nullopt is a certificate of non-isomorphism.
std::optional<Embedding> find_isomorphism_over(const FiniteStructure& a,
                                               const FiniteStructure& b,
                                               const std::vector<std::string>& fixed);

// Isomorphism search extending an arbitrary partial assignment.
std::optional<Embedding> find_isomorphism_extending(const FiniteStructure& a,
                                                    const FiniteStructure& b,
                                                    const std::map<std::string, std::string>& partial);

// Whether the structure has an automorphism other than the identity.
bool has_nontrivial_automorphism(const FiniteStructure& s);

// A name based on `base` that does not occur in `taken`; appends primes.
std::string fresh_name(std::string base, const std::vector<std::string>& taken);

// Every possible orbit on m elements (indices 0..m-1) under the group, as
// canonical tuples in sorted order.
std::vector<OrbitTuple> all_possible_orbits(const SymmetryGroup& g, int m);

} // namespace fh
