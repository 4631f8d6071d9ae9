#pragma once

#include <string>
#include <vector>

#include "fh/structure.hpp"

namespace fh {

// Constructions moving between symmetry levels while preserving relative
// predimension: desymmetrization (G -> trivial), relaxation and relaxed
// symmetrization (trivial -> G), and the isomorphism-extension steps built
// from them.

struct TransferResult {
    FiniteStructure output;
    std::vector<std::string> fresh_elements; // the w-points, possibly empty
    bool dimension_match_checked = false;
};

// Universe of B, trivial group; relations of a_ns plus one ordered
// representative (lex-least orbit member) per G-orbit of B not inside A.
TransferResult desymmetrize(const FiniteStructure& b, const FiniteStructure& a_ns);

// Adds one fresh point w per ordered relation of C outside A, plus the
// relation (w, a_1, ..., a_{n-1}). C is self-sufficient in the result.
TransferResult relax(const FiniteStructure& c, const std::vector<std::string>& a);

// Universe of C plus the same fresh points; relations of a_g plus the two
// G-orbits <w,a_1..a_{n-1}> and <w,a_2..a_n> per relation outside A.
TransferResult relaxed_symmetrize(const FiniteStructure& c, const FiniteStructure& a_g);

struct IsoextStep {
    FiniteStructure b1;
    FiniteStructure b2;
};

// dim tables of a1 (G-structure) and a2 (trivial-group structure on the same
// universe) must agree on every subset (dim-mismatch with witness otherwise);
// a1 must be self-sufficient in c. Output: b1 = c, b2 = desymmetrization,
// with subset-wise dim equality and a2 strong in b2, both verified.
IsoextStep isoext_step_g_to_ns(const FiniteStructure& a1, const FiniteStructure& a2,
                               const FiniteStructure& c);

// Mirror image: c extends a1 on the trivial side; b1 = relaxation, b2 =
// relaxed symmetrization over a2.
IsoextStep isoext_step_ns_to_g(const FiniteStructure& a1, const FiniteStructure& a2,
                               const FiniteStructure& c);

} // namespace fh
