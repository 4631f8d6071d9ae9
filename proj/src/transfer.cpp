#include "fh/transfer.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fh/error.hpp"
#include "fh/kernels.hpp"
#include "fh/predim.hpp"

namespace fh {

namespace {

void require_trivial(const FiniteStructure& s, const char* what) {
    if (!s.group().is_trivial())
        err::raise("arity-mismatch", std::string(what) + " must carry the trivial group");
}

void require_same_arity(const FiniteStructure& a, const FiniteStructure& b) {
    if (a.arity() != b.arity()) err::raise("arity-mismatch", "arities differ");
}

void require_universe_in(const FiniteStructure& part, const FiniteStructure& whole) {
    for (const auto& e : part.elements())
        if (!whole.has_element(e))
            err::raise("unknown-element", "'" + e + "' not in the host universe");
}

// Ordered relations of C avoiding A, with their fresh w names; shared by
// relax and relaxed_symmetrize so both outputs live on one universe.
std::vector<std::pair<std::vector<std::string>, std::string>> new_rels_with_w(
    const FiniteStructure& c, const Bits& a_mask) {
    std::vector<std::pair<std::vector<std::string>, std::string>> out;
    std::vector<std::string> taken = c.elements();
    for (std::size_t i = 0; i < c.relations().size(); ++i) {
        if (c.relation_masks()[i].subset_of(a_mask)) continue;
        std::vector<std::string> t;
        for (int e : c.relations()[i].entries) t.push_back(c.element(e));
        std::ostringstream os;
        os << "w_";
        for (const auto& e : t) os << '_' << e;
        std::string w = fresh_name(os.str(), taken);
        taken.push_back(w);
        out.emplace_back(std::move(t), std::move(w));
    }
    return out;
}

void check_dim_tables_equal(const FiniteStructure& x, const FiniteStructure& y,
                            const char* context) {
    if (x.elements() != y.elements())
        err::raise("precondition", std::string(context) + ": universes differ");
    auto tx = kernels::dim_table(kernels::Rel32::of(x));
    auto ty = kernels::dim_table(kernels::Rel32::of(y));
    for (std::size_t m = 0; m < tx.size(); ++m) {
        if (tx[m] != ty[m]) {
            std::ostringstream os;
            os << context << ": dim differs on {";
            auto names = x.names_of(Bits::from_low32(static_cast<std::uint32_t>(m)));
            for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
            os << "} (" << tx[m] << " vs " << ty[m] << ")";
            err::raise("dim-mismatch", os.str());
        }
    }
}

} // namespace

TransferResult desymmetrize(const FiniteStructure& b, const FiniteStructure& a_ns) {
    require_same_arity(b, a_ns);
    require_trivial(a_ns, "desymmetrization base");
    require_universe_in(a_ns, b);
    Bits a_mask = b.mask_of(a_ns.elements());

    std::vector<std::vector<std::string>> rels;
    for (const auto& r : a_ns.relations()) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(a_ns.element(e));
        rels.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < b.relations().size(); ++i) {
        if (b.relation_masks()[i].subset_of(a_mask)) continue;
        std::vector<std::string> t; // canonical rep = lex-least orbit member
        for (int e : b.relations()[i].entries) t.push_back(b.element(e));
        rels.push_back(std::move(t));
    }
    TransferResult res;
    res.output = FiniteStructure("desym_" + b.name(), SymmetryGroup::trivial(b.arity()),
                                 b.elements(), rels);
    return res;
}

TransferResult relax(const FiniteStructure& c, const std::vector<std::string>& a) {
    require_trivial(c, "relaxation input");
    Bits a_mask = c.mask_of(a);
    int n = c.arity();

    std::vector<std::string> elems = c.elements();
    std::vector<std::vector<std::string>> rels;
    for (const auto& r : c.relations()) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(c.element(e));
        rels.push_back(std::move(t));
    }
    TransferResult res;
    for (auto& [tuple, w] : new_rels_with_w(c, a_mask)) {
        elems.push_back(w);
        std::vector<std::string> nr{w};
        for (int i = 0; i < n - 1; ++i) nr.push_back(tuple[i]);
        rels.push_back(std::move(nr));
        res.fresh_elements.push_back(w);
    }
    res.output = FiniteStructure("rlx_" + c.name(), c.group(), std::move(elems), rels);
    return res;
}

TransferResult relaxed_symmetrize(const FiniteStructure& c, const FiniteStructure& a_g) {
    require_trivial(c, "relaxed symmetrization input");
    require_same_arity(c, a_g);
    require_universe_in(a_g, c);
    Bits a_mask = c.mask_of(a_g.elements());
    int n = c.arity();

    std::vector<std::string> elems = c.elements();
    std::vector<std::vector<std::string>> rels;
    for (const auto& r : a_g.relations()) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(a_g.element(e));
        rels.push_back(std::move(t));
    }
    TransferResult res;
    for (auto& [tuple, w] : new_rels_with_w(c, a_mask)) {
        elems.push_back(w);
        std::vector<std::string> r1{w}, r2{w};
        for (int i = 0; i < n - 1; ++i) r1.push_back(tuple[i]);
        for (int i = 1; i < n; ++i) r2.push_back(tuple[i]);
        rels.push_back(std::move(r1));
        rels.push_back(std::move(r2));
        res.fresh_elements.push_back(w);
    }
    res.output =
        FiniteStructure("sym_" + c.name(), a_g.group(), std::move(elems), rels);
    return res;
}

namespace {

void check_seed_pair(const FiniteStructure& a1, const FiniteStructure& a2) {
    if (a1.elements() != a2.elements())
        err::raise("precondition", "seed structures must share a universe");
    check_dim_tables_equal(a1, a2, "seed pair");
}

void check_strong_base(const FiniteStructure& c, const FiniteStructure& a1) {
    require_universe_in(a1, c);
    Bits am = c.mask_of(a1.elements());
    if (!c.induced(am).equal(a1))
        err::raise("precondition", "extension does not induce the seed structure");
    if (!is_self_sufficient(c, am))
        err::raise("not-strong-base", "seed is not self-sufficient in the extension");
}

} // namespace

IsoextStep isoext_step_g_to_ns(const FiniteStructure& a1, const FiniteStructure& a2,
                               const FiniteStructure& c) {
    require_trivial(a2, "target seed");
    check_seed_pair(a1, a2);
    check_strong_base(c, a1);

    IsoextStep step;
    step.b1 = c;
    step.b2 = desymmetrize(c, a2).output;
    check_dim_tables_equal(step.b1, step.b2, "extension pair");
    if (!is_self_sufficient(step.b2, step.b2.mask_of(a2.elements())))
        err::raise("not-strong-base", "target seed lost self-sufficiency");
    return step;
}

IsoextStep isoext_step_ns_to_g(const FiniteStructure& a1, const FiniteStructure& a2,
                               const FiniteStructure& c) {
    require_trivial(a1, "source seed");
    check_seed_pair(a1, a2);
    check_strong_base(c, a1);

    IsoextStep step;
    step.b1 = relax(c, a1.elements()).output;
    step.b2 = relaxed_symmetrize(c, a2).output;
    check_dim_tables_equal(step.b1, step.b2, "extension pair");
    if (!is_self_sufficient(step.b2, step.b2.mask_of(a2.elements())))
        err::raise("not-strong-base", "target seed lost self-sufficiency");
    return step;
}

} // namespace fh
