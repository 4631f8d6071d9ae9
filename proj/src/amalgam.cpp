#include "fh/amalgam.hpp"

#include <set>

#include "fh/error.hpp"
#include "fh/kernels.hpp"
#include "fh/predim.hpp"

namespace fh {

namespace {

void check_amalgam_inputs(const FiniteStructure& b1, const FiniteStructure& b2,
                          const std::vector<std::string>& a) {
    if (!(b1.group() == b2.group()))
        err::raise("arity-mismatch", "amalgam parts must share group and arity");
    std::set<std::string> shared(a.begin(), a.end());
    for (const auto& n : a) {
        b1.index_of(n);
        b2.index_of(n);
    }
    std::set<std::string> u1(b1.elements().begin(), b1.elements().end());
    for (const auto& e : b2.elements())
        if (u1.count(e) && !shared.count(e))
            err::raise("overlap-not-base", "universes meet outside the base at '" + e + "'");
    if (!b1.induced(b1.mask_of(a)).equal(b2.induced(b2.mask_of(a))))
        err::raise("shared-mismatch", "parts disagree on the base substructure");
}

} // namespace

FiniteStructure simple_amalgam(const FiniteStructure& b1, const FiniteStructure& b2,
                               const std::vector<std::string>& a) {
    check_amalgam_inputs(b1, b2, a);
    std::vector<std::string> elems = b1.elements();
    elems.insert(elems.end(), b2.elements().begin(), b2.elements().end());
    std::vector<std::vector<std::string>> rels;
    for (const auto* part : {&b1, &b2}) {
        for (const auto& r : part->relations()) {
            std::vector<std::string> t;
            for (int e : r.entries) t.push_back(part->element(e));
            rels.push_back(std::move(t));
        }
    }
    return FiniteStructure(b1.name() + "+" + b2.name(), b1.group(), std::move(elems), rels);
}

FiniteStructure iterated_amalgam(const std::vector<FiniteStructure>& parts,
                                 const std::vector<std::string>& a) {
    if (parts.empty()) err::raise("usage", "iterated amalgam needs at least one part");
    FiniteStructure acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = simple_amalgam(acc, parts[i], a);
    return acc;
}

AmalgamCheck verify_simple_amalgam(const FiniteStructure& d, const FiniteStructure& b1,
                                   const FiniteStructure& b2,
                                   const std::vector<std::string>& a) {
    // Def items 2-3: universe is the union and the parts are induced.
    std::set<std::string> un(b1.elements().begin(), b1.elements().end());
    un.insert(b2.elements().begin(), b2.elements().end());
    if (std::set<std::string>(d.elements().begin(), d.elements().end()) != un)
        err::raise("precondition", "claimed amalgam universe is not the union");
    Bits m1 = d.mask_of(b1.elements());
    Bits m2 = d.mask_of(b2.elements());
    if (!d.induced(m1).equal(b1) || !d.induced(m2).equal(b2))
        err::raise("precondition", "parts are not induced substructures of the amalgam");
    check_amalgam_inputs(b1, b2, a);

    AmalgamCheck out{true, std::nullopt};
    if (d.size() <= 30) {
        auto r = kernels::Rel32::of(d);
        auto viol = kernels::additivity_violation(r, m1.low32(), m2.low32(),
                                                  d.mask_of(a).low32());
        if (viol) {
            out.ok = false;
            out.counterexample = Bits::from_low32(*viol);
        }
        return out;
    }
    err::raise("search-bound", "amalgam verification sweep exceeds mask width");
}

} // namespace fh
