#include "fh/predim.hpp"

#include <algorithm>

#include "fh/config.hpp"
#include "fh/error.hpp"
#include "fh/flow.hpp"
#include "fh/kernels.hpp"

namespace fh {

namespace {

void check_subset(const FiniteStructure& m, const Bits& a) {
    if (!a.subset_of(m.universe_mask()))
        err::raise("unknown-element", "set exceeds the structure's universe");
}

} // namespace

int delta(const FiniteStructure& m, const Bits& a) {
    check_subset(m, a);
    return a.count() - m.relations_inside(a);
}

int delta_rel(const FiniteStructure& m, const Bits& b, const Bits& a) {
    return delta(m, a | b) - delta(m, a);
}

// dim(A) = delta(A) - max over relation sets S not inside A of
// (|S| - |vertices(S) \ A|): a max-weight-closure instance, solved as a
// min-cut. The residual source side yields the unique minimal minimizer,
// which is the self-sufficient closure of A.
DimWitness dim_witness(const FiniteStructure& m, const Bits& a) {
    check_subset(m, a);
    const auto& rel_masks = m.relation_masks();
    std::vector<int> new_rels;
    for (int r = 0; r < static_cast<int>(rel_masks.size()); ++r)
        if (!rel_masks[r].subset_of(a)) new_rels.push_back(r);

    std::vector<int> verts = (m.universe_mask() - a).to_indices();
    std::vector<int> vert_node(m.size(), -1);
    const int source = 0, sink = 1;
    int next = 2;
    std::vector<int> rel_node(new_rels.size());
    for (std::size_t i = 0; i < new_rels.size(); ++i) rel_node[i] = next++;
    for (int v : verts) vert_node[v] = next++;

    MaxFlow flow(next);
    const std::int64_t inf = 1 << 20;
    for (std::size_t i = 0; i < new_rels.size(); ++i) {
        flow.add_edge(source, rel_node[i], 1);
        for (int v : (rel_masks[new_rels[i]] - a).to_indices())
            flow.add_edge(rel_node[i], vert_node[v], inf);
    }
    for (int v : verts) flow.add_edge(vert_node[v], sink, 1);

    std::int64_t f = flow.run(source, sink);
    int closure_value = static_cast<int>(static_cast<std::int64_t>(new_rels.size()) - f);

    auto side = flow.source_side(source);
    Bits minimal = a;
    for (int v : verts)
        if (side[vert_node[v]]) minimal.set(v);

    DimWitness w;
    w.dim = delta(m, a) - closure_value;
    w.minimal_minimizer = minimal;
    return w;
}

int dim(const FiniteStructure& m, const Bits& a) { return dim_witness(m, a).dim; }

bool is_self_sufficient(const FiniteStructure& m, const Bits& a) {
    return dim(m, a) == delta(m, a);
}

ClosureCertificate self_sufficient_closure(const FiniteStructure& m, const Bits& a) {
    check_subset(m, a);
    ClosureCertificate cert;
    cert.input = a;
    int free_count = m.size() - a.count();
    if (m.size() <= 30 && free_count <= std::min(16, config().bound)) {
        auto r = kernels::Rel32::of(m);
        std::uint32_t fixed = a.low32();
        std::uint32_t free = (m.universe_mask() - a).low32();
        auto sweep = kernels::min_delta_over_supersets(r, fixed, free);
        cert.closure = Bits::from_low32(sweep.minimizer_intersection);
        cert.minimizers_examined = sweep.minimizer_count;
        cert.dimension = sweep.min_delta;
        return cert;
    }
    DimWitness w = dim_witness(m, a);
    cert.closure = w.minimal_minimizer;
    cert.minimizers_examined = 1;
    cert.dimension = w.dim;
    return cert;
}

Bits d_closure(const FiniteStructure& m, const Bits& n) {
    check_subset(m, n);
    int base = dim(m, n);
    Bits out = n;
    for (int i = 0; i < m.size(); ++i) {
        if (n.test(i)) continue;
        Bits with = n;
        with.set(i);
        if (dim(m, with) == base) out.set(i);
    }
    return out;
}

bool is_d_closed(const FiniteStructure& m, const Bits& n) { return d_closure(m, n) == n; }

bool in_class(const FiniteStructure& m) { return dim(m, Bits::none()) == 0; }

bool in_class_sweep(const FiniteStructure& m) {
    auto r = kernels::Rel32::of(m);
    return !kernels::negative_delta_subset(r).has_value();
}

} // namespace fh
