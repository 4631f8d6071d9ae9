#include "fh/reducts.hpp"

#include <algorithm>
#include <set>

#include "fh/error.hpp"
#include "fh/predim.hpp"

namespace fh {

FiniteStructure phi_reduct(const FiniteStructure& m, const SymmetryGroup& g) {
    if (!m.group().is_subgroup_of(g))
        err::raise("not-subgroup", "the structure's group must be a subgroup of the target");
    std::vector<std::vector<std::string>> rels;
    for (const auto& r : m.relations()) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(m.element(e));
        rels.push_back(std::move(t)); // re-canonicalized under g on construction
    }
    return FiniteStructure(m.name() + "_red", g, m.elements(), rels);
}

FiniteStructure exquisite_reduct(const FiniteStructure& m, const AtomicType& q) {
    if (!check_exquisite(q)) err::raise("precondition", "reduct type must be exquisite");
    std::vector<std::vector<std::string>> rels;
    for (const auto& t : realizations(m, q)) {
        std::vector<std::string> head;
        for (int e : t.head) head.push_back(m.element(e));
        rels.push_back(std::move(head));
    }
    return FiniteStructure(m.name() + "_exqred", SymmetryGroup::trivial(q.arity), m.elements(),
                           rels);
}

namespace {

FiniteStructure apply_reduct(const FiniteStructure& m, ReductKind kind, const SymmetryGroup* g,
                             const AtomicType* q) {
    if (kind == ReductKind::Subgroup) {
        if (!g) err::raise("usage", "subgroup reduct needs a target group");
        return phi_reduct(m, *g);
    }
    if (!q) err::raise("usage", "exquisite reduct needs a type");
    return exquisite_reduct(m, *q);
}

} // namespace

bool check_encloses(const FiniteStructure& m, const Bits& a, ReductKind kind,
                    const SymmetryGroup* g, const AtomicType* q) {
    FiniteStructure whole = apply_reduct(m, kind, g, q);
    FiniteStructure part = apply_reduct(m.induced(a), kind, g, q);
    return whole.induced(whole.mask_of(part.elements())).equal(part);
}

bool check_reduces_class(const FiniteStructure& a, ReductKind kind, const SymmetryGroup* g,
                         const AtomicType* q) {
    if (!in_class(a)) err::raise("not-in-class", "input is outside its class");
    return in_class(apply_reduct(a, kind, g, q));
}

bool check_stronger(const FiniteStructure& m, const Bits& a, ReductKind kind,
                    const SymmetryGroup* g, const AtomicType* q) {
    if (!is_self_sufficient(m, a))
        err::raise("not-strong-base", "the set is not self-sufficient in the source");
    FiniteStructure red = apply_reduct(m, kind, g, q);
    return is_self_sufficient(red, red.mask_of(m.names_of(a)));
}

FiniteStructure mixed_amalgam_subgroup(const FiniteStructure& a, const FiniteStructure& b) {
    const SymmetryGroup& h = a.group();
    const SymmetryGroup& g = b.group();
    if (!h.is_subgroup_of(g))
        err::raise("not-subgroup", "first structure's group must embed in the second's");
    FiniteStructure a_red = phi_reduct(a, g);
    for (const auto& e : a_red.elements())
        if (!b.has_element(e)) err::raise("precondition", "reduct universe must lie inside B");
    Bits a_mask = b.mask_of(a_red.elements());
    if (!b.induced(a_mask).equal(a_red))
        err::raise("precondition", "B does not induce the reduct of A");
    if (!is_self_sufficient(b, a_mask))
        err::raise("precondition", "reduct of A is not self-sufficient in B");

    std::vector<std::vector<std::string>> rels;
    for (const auto& r : a.relations()) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(a.element(e));
        rels.push_back(std::move(t));
    }
    // one H-orbit per new G-orbit, lex-least section
    for (std::size_t i = 0; i < b.relations().size(); ++i) {
        if (b.relation_masks()[i].subset_of(a_mask)) continue;
        std::vector<std::string> t;
        for (int e : b.relations()[i].entries) t.push_back(b.element(e));
        rels.push_back(std::move(t));
    }
    FiniteStructure c(a.name() + "_mix", h, b.elements(), rels);

    Bits a_in_c = c.mask_of(a.elements());
    if (!c.induced(a_in_c).equal(a) || !is_self_sufficient(c, a_in_c))
        err::raise("precondition", "mixed amalgam lost the strong base");
    if (!phi_reduct(c, g).equal(b))
        err::raise("precondition", "mixed amalgam reduct mismatch");
    return c;
}

FiniteStructure mixed_amalgam_exquisite(const FiniteStructure& a, const FiniteStructure& b,
                                        const AtomicType& q) {
    if (!b.group().is_trivial())
        err::raise("arity-mismatch", "target of the exquisite mixed amalgam must be trivial-group");
    FiniteStructure a_red = exquisite_reduct(a, q);
    for (const auto& e : a_red.elements())
        if (!b.has_element(e)) err::raise("precondition", "reduct universe must lie inside B");
    Bits a_mask = b.mask_of(a_red.elements());
    if (!b.induced(a_mask).equal(a_red))
        err::raise("precondition", "B does not induce the exquisite reduct of A");
    if (!is_self_sufficient(b, a_mask))
        err::raise("precondition", "exquisite reduct of A is not self-sufficient in B");

    std::vector<std::string> elems = b.elements();
    std::vector<std::string> taken = elems;
    std::vector<std::vector<std::string>> rels;
    for (const auto& r : a.relations()) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(a.element(e));
        rels.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < b.relations().size(); ++i) {
        if (b.relation_masks()[i].subset_of(a_mask)) continue;
        std::vector<std::string> head;
        for (int e : b.relations()[i].entries) head.push_back(b.element(e));
        // fresh witness tail for this head
        std::vector<std::string> sub(q.var_count());
        for (int v = 0; v < q.arity; ++v) sub[v] = head[v];
        for (int v = 0; v < q.tail_len; ++v) {
            std::string base = "w" + std::to_string(v + 1) + "_";
            for (const auto& hname : head) base += hname;
            std::string w = fresh_name(base, taken);
            taken.push_back(w);
            elems.push_back(w);
            sub[q.arity + v] = w;
        }
        for (const auto& r : q.relations) {
            std::vector<std::string> t;
            for (int v : r.entries) t.push_back(sub[v]);
            rels.push_back(std::move(t));
        }
    }
    FiniteStructure c(a.name() + "_mix", a.group(), std::move(elems), rels);

    Bits a_in_c = c.mask_of(a.elements());
    if (!c.induced(a_in_c).equal(a) || !is_self_sufficient(c, a_in_c))
        err::raise("precondition", "mixed amalgam lost the strong base");
    FiniteStructure c_red = exquisite_reduct(c, q);
    if (!c_red.induced(c_red.mask_of(b.elements())).equal(b) ||
        c_red.relation_count() != b.relation_count())
        err::raise("precondition", "mixed amalgam reduct differs from B");
    if (!is_self_sufficient(c_red, c_red.mask_of(b.elements())))
        err::raise("precondition", "B is not self-sufficient in the reduct");
    return c;
}

namespace {

std::vector<std::string> fresh_points(const FiniteStructure& f, int n, const std::string& base) {
    std::vector<std::string> taken = f.elements();
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) {
        std::string p = fresh_name(base + std::to_string(i), taken);
        taken.push_back(p);
        out.push_back(p);
    }
    return out;
}

} // namespace

std::pair<FiniteStructure, FiniteStructure> benign_pair_subgroup(const FiniteStructure& f,
                                                                 const SymmetryGroup& g) {
    const SymmetryGroup& h = f.group();
    if (!h.is_subgroup_of(g) || h.order() == g.order())
        err::raise("not-proper-subgroup", "need a proper subgroup pair");
    // lex-least sigma in G \ H
    const Permutation* sigma = nullptr;
    for (const auto& p : g.members()) {
        if (!h.contains(p)) {
            sigma = &p;
            break;
        }
    }
    int n = f.arity();
    auto pts = fresh_points(f, n, "p");
    std::vector<std::string> elems = f.elements();
    elems.insert(elems.end(), pts.begin(), pts.end());

    std::vector<std::vector<std::string>> rels;
    for (const auto& r : f.relations()) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(f.element(e));
        rels.push_back(std::move(t));
    }
    rels.push_back(pts);
    FiniteStructure a(f.name() + "_benA", h, elems, rels);
    rels.push_back(sigma->apply(pts));
    FiniteStructure b(f.name() + "_benB", h, elems, rels);
    return {a, b};
}

std::pair<FiniteStructure, FiniteStructure> benign_pair_exquisite(const FiniteStructure& f,
                                                                  const AtomicType& q) {
    if (!in_class(f)) err::raise("not-in-class", "benign seed must be in the class");
    int n = f.arity();
    auto pts = fresh_points(f, n, "p");
    std::vector<std::string> elems = f.elements();
    elems.insert(elems.end(), pts.begin(), pts.end());

    std::vector<std::vector<std::string>> rels;
    for (const auto& r : f.relations()) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(f.element(e));
        rels.push_back(std::move(t));
    }
    FiniteStructure a1(f.name() + "_benA", f.group(), elems, rels);
    rels.push_back(pts);
    FiniteStructure a2(f.name() + "_benB", f.group(), elems, rels);
    (void)q;
    return {a1, a2};
}

} // namespace fh
