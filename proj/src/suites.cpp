#include "fh/suites.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "fh/amalgam.hpp"
#include "fh/error.hpp"
#include "fh/exquisite.hpp"
#include "fh/generic.hpp"
#include "fh/io.hpp"
#include "fh/kernels.hpp"
#include "fh/predim.hpp"
#include "fh/reducts.hpp"
#include "fh/transfer.hpp"

namespace fh::suites {

namespace {

SuiteResult pass(const std::string& name, const std::string& detail) {
    return SuiteResult{name, true, detail, ""};
}

SuiteResult fail(const std::string& name, const std::string& detail,
                 const std::string& counterexample) {
    return SuiteResult{name, false, detail, counterexample};
}

const SymmetryGroup& sym3() {
    static SymmetryGroup g = SymmetryGroup::full(3);
    return g;
}
const SymmetryGroup& ns3() {
    static SymmetryGroup g = SymmetryGroup::trivial(3);
    return g;
}
const SymmetryGroup& swap12() {
    static SymmetryGroup g = SymmetryGroup::generated(
        3, {Permutation::from_one_based({2, 1, 3})});
    return g;
}
const SymmetryGroup& sym4() {
    static SymmetryGroup g = SymmetryGroup::full(4);
    return g;
}

std::string padded2(int n) { return (n < 10 ? "0" : "") + std::to_string(n); }

std::string show_set(const FiniteStructure& s, const Bits& mask) {
    std::string out = "{";
    auto names = s.names_of(mask);
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
    return out + "}";
}

Bits random_subset(SplitMix64& rng, int universe, int max_size) {
    int k = static_cast<int>(rng.below(std::min(universe, max_size) + 1));
    Bits b;
    while (b.count() < k) b.set(static_cast<int>(rng.below(universe)));
    return b;
}

// Relation-free extensions are always strong; random ones get a few tries.
FiniteStructure strong_extension(SplitMix64& rng, const FiniteStructure& a, int max_fresh,
                                 int max_new_rels, const std::string& name) {
    for (int attempt = 0; attempt < 24; ++attempt) {
        int f = 1 + static_cast<int>(rng.below(max_fresh));
        std::vector<std::string> elems = a.elements();
        for (int i = 1; i <= f; ++i)
            elems.push_back(fresh_name("y" + padded2(i), elems));
        int m = static_cast<int>(elems.size());
        auto pool = all_possible_orbits(a.group(), m);
        std::vector<std::vector<std::string>> rels;
        for (const auto& r : a.relations()) {
            std::vector<std::string> t;
            for (int e : r.entries) t.push_back(a.element(e));
            rels.push_back(std::move(t));
        }
        std::sort(elems.begin(), elems.end());
        Bits amask;
        std::set<std::string> aset(a.elements().begin(), a.elements().end());
        for (int i = 0; i < m; ++i)
            if (aset.count(elems[i])) amask.set(i);
        int want = attempt < 20 && !pool.empty()
                       ? static_cast<int>(rng.below(max_new_rels + 1))
                       : 0;
        for (int k = 0; k < want; ++k) {
            const auto& orb = pool[rng.below(pool.size())];
            Bits om = Bits::of(orb.entries);
            if (om.subset_of(amask)) continue;
            std::vector<std::string> t;
            for (int e : orb.entries) t.push_back(elems[e]);
            rels.push_back(std::move(t));
        }
        FiniteStructure c(name, a.group(), elems, rels);
        if (!c.induced(c.mask_of(a.elements())).equal(a)) continue;
        if (!in_class(c)) continue;
        if (is_self_sufficient(c, c.mask_of(a.elements()))) return c;
    }
    err::raise("internal", "strong extension generation failed");
}

// Two or more copies of the canonical structure glued along single orbits:
// copy i+1 shares exactly the points of one of its orbits with an orbit of
// the chain built so far.
FiniteStructure glued_copies(const AtomicType& q, SplitMix64& rng, int copies,
                             const std::string& name) {
    FiniteStructure acc = canonical_structure(q).with_name(name);
    for (int c = 2; c <= copies; ++c) {
        FiniteStructure next = canonical_structure(q);
        const auto& host_orbit = acc.relations()[rng.below(acc.relations().size())];
        const auto& own_orbit = next.relations()[rng.below(next.relations().size())];
        std::map<std::string, std::string> ren;
        std::vector<std::string> host_names;
        for (int e : host_orbit.entries) host_names.push_back(acc.element(e));
        for (std::size_t i = 0; i < own_orbit.entries.size(); ++i)
            ren[next.element(own_orbit.entries[i])] = host_names[i];
        std::vector<std::string> taken = acc.elements();
        for (const auto& e : next.elements()) {
            if (ren.count(e)) continue;
            std::string f = fresh_name("g" + std::to_string(c) + "_" + e, taken);
            taken.push_back(f);
            ren[e] = f;
        }
        acc = simple_amalgam(acc, next.renamed(ren), host_names).with_name(name);
    }
    return acc;
}

std::set<std::vector<std::string>> head_names(const FiniteStructure& m, const AtomicType& q) {
    std::set<std::vector<std::string>> out;
    for (const auto& t : realizations(m, q)) {
        std::vector<std::string> h;
        for (int e : t.head) h.push_back(m.element(e));
        out.insert(std::move(h));
    }
    return out;
}

// ---------------------------------------------------------------- suites

SuiteResult base_witness(const SuiteOptions&) {
    const std::string name = "base-witness";
    AtomicType q = base_exquisite_3();
    FiniteStructure cs = canonical_structure(q);
    if (q.t_q() != 9 || q.d_q() != 2)
        return fail(name, "base type has wrong counts", serialize_atomic_type(q));
    if (delta(cs, cs.universe_mask()) != 2)
        return fail(name, "delta of the witness is not 2", serialize_structure(cs));
    if (!in_class_sweep(cs))
        return fail(name, "witness failed the exhaustive class sweep", serialize_structure(cs));
    if (!check_nice(q)) return fail(name, "witness is not nice", serialize_atomic_type(q));
    auto itw = check_intertwined(q);
    if (!itw.ok)
        return fail(name, "witness not intertwined, X=" + show_set(cs, *itw.witness),
                    serialize_structure(cs));
    if (!check_without_symmetry(q))
        return fail(name, "witness has a non-trivial automorphism", serialize_structure(cs));
    if (!check_exquisite(q)) return fail(name, "conjunction failed", serialize_atomic_type(q));
    return pass(name, "delta=2, 2^11 class sweep clean, exquisite");
}

SuiteResult lift_chain(const SuiteOptions&) {
    const std::string name = "lift-chain";
    const AtomicType& q4 = exquisite_for_arity(4);
    FiniteStructure cs4 = canonical_structure(q4);
    if (cs4.size() != 16 || cs4.relation_count() != 13 || q4.d_q() != 3)
        return fail(name, "arity-4 lift has wrong counts", serialize_structure(cs4));
    if (!check_exquisite(q4))
        return fail(name, "arity-4 lift not exquisite", serialize_atomic_type(q4));
    const AtomicType& q5 = exquisite_for_arity(5);
    if (!check_exquisite(q5))
        return fail(name, "arity-5 lift not exquisite", serialize_atomic_type(q5));
    return pass(name, "arity 4: 16 points / 13 orbits / d_q=3; arity 5 verified (2^22 sweep)");
}

SuiteResult submodularity(const SuiteOptions& opts) {
    const std::string name = "submodularity";
    int count = opts.count ? opts.count : 500;
    SplitMix64 rng(opts.seed);
    const SymmetryGroup* groups[] = {&ns3(), &sym3(), &swap12(), &sym4()};
    long long pairs = 0;
    for (int i = 0; i < count; ++i) {
        const SymmetryGroup& g = *groups[i % 4];
        FiniteStructure s = random_structure(rng, g, 9, 10 + static_cast<int>(rng.below(50)),
                                             "sub" + std::to_string(i));
        auto t = kernels::delta_table(kernels::Rel32::of(s));
        int total = 1 << s.size();
        auto rel_of = [&](int mask) {
            return std::popcount(static_cast<unsigned>(mask)) - t[mask];
        };
        for (int a = 0; a < total; ++a) {
            for (int b = 0; b < total; ++b) {
                ++pairs;
                int lhs = t[a | b];
                int rhs = t[a] + t[b] - t[a & b];
                if (lhs > rhs)
                    return fail(name,
                                "submodularity violated at A=" +
                                    show_set(s, Bits::from_low32(a)) +
                                    " B=" + show_set(s, Bits::from_low32(b)),
                                serialize_structure(s));
                bool equality = lhs == rhs;
                bool union_cond = rel_of(a | b) == rel_of(a) + rel_of(b) - rel_of(a & b);
                if (equality != union_cond)
                    return fail(name,
                                "equality condition mismatch at A=" +
                                    show_set(s, Bits::from_low32(a)) +
                                    " B=" + show_set(s, Bits::from_low32(b)),
                                serialize_structure(s));
            }
        }
    }
    return pass(name, std::to_string(count) + " structures, " + std::to_string(pairs) +
                          " subset pairs, zero violations");
}

SuiteResult pregeometry(const SuiteOptions& opts) {
    const std::string name = "pregeometry";
    int count = opts.count ? opts.count : 200;
    SplitMix64 rng(opts.seed);
    for (int i = 0; i < count; ++i) {
        const SymmetryGroup& g = (i % 2) ? ns3() : sym3();
        FiniteStructure s = random_class_member(rng, g, 7, 20 + static_cast<int>(rng.below(50)),
                                                "pg" + std::to_string(i));
        int m = s.size();
        int total = 1 << m;
        auto dim_t = kernels::dim_table(kernels::Rel32::of(s));
        auto bad = [&](const std::string& what, int mask) {
            return fail(name, what + " at Y=" + show_set(s, Bits::from_low32(mask)),
                        serialize_structure(s));
        };
        if (dim_t[0] != 0) return bad("dim(empty) != 0", 0);
        for (int mask = 0; mask < total; ++mask) {
            for (int a = 0; a < m; ++a) {
                if (mask >> a & 1) continue;
                int up = mask | (1 << a);
                if (!(dim_t[mask] <= dim_t[up] && dim_t[up] <= dim_t[mask] + 1))
                    return bad("unit-step axiom violated", mask);
            }
        }
        for (int a = 0; a < total; ++a)
            for (int b = 0; b < total; ++b)
                if (dim_t[a | b] > dim_t[a] + dim_t[b] - dim_t[a & b])
                    return bad("dim submodularity violated", a);
        // closure operator from the dim table
        std::vector<int> clo(total);
        for (int mask = 0; mask < total; ++mask) {
            int c = mask;
            for (int a = 0; a < m; ++a)
                if (!(mask >> a & 1) && dim_t[mask | (1 << a)] == dim_t[mask]) c |= 1 << a;
            clo[mask] = c;
        }
        for (int mask = 0; mask < total; ++mask) {
            if ((mask & clo[mask]) != mask) return bad("closure not extensive", mask);
            if (clo[clo[mask]] != clo[mask]) return bad("closure not idempotent", mask);
            for (int a = 0; a < m; ++a)
                if (!(mask >> a & 1) && (clo[mask] & ~clo[mask | (1 << a)]))
                    return bad("closure not monotone", mask);
        }
        for (int mask = 0; mask < total; ++mask) {
            for (int b = 0; b < m; ++b) {
                if (mask >> b & 1) continue;
                int with_b = mask | (1 << b);
                for (int a = 0; a < m; ++a) {
                    if (a == b || (mask >> a & 1)) continue;
                    bool a_in = (clo[with_b] >> a & 1) && !(clo[mask] >> a & 1);
                    if (a_in && !(clo[mask | (1 << a)] >> b & 1))
                        return bad("exchange violated", mask);
                }
            }
        }
    }
    return pass(name, std::to_string(count) +
                          " class members (sym and nonsym), axioms I-III and closure 1-5 clean");
}

SuiteResult closure_oracles(const SuiteOptions& opts) {
    const std::string name = "closure-oracles";
    int count = opts.count ? opts.count : 200;
    SplitMix64 rng(opts.seed);
    for (int i = 0; i < count; ++i) {
        const SymmetryGroup& g = (i % 2) ? ns3() : sym3();
        FiniteStructure s = random_class_member(rng, g, 12, 10 + static_cast<int>(rng.below(40)),
                                                "cl" + std::to_string(i));
        Bits a = random_subset(rng, s.size(), s.size());
        auto r32 = kernels::Rel32::of(s);
        auto sweep = kernels::min_delta_over_supersets(r32, a.low32(),
                                                       (s.universe_mask() - a).low32());
        Bits oracle_closure = Bits::from_low32(sweep.minimizer_intersection);

        ClosureCertificate cert = self_sufficient_closure(s, a);
        DimWitness flow = dim_witness(s, a);
        if (cert.closure != oracle_closure || cert.dimension != sweep.min_delta)
            return fail(name, "certificate disagrees with the minimizer-intersection oracle at A=" +
                                  show_set(s, a),
                        serialize_structure(s));
        if (flow.minimal_minimizer != oracle_closure || flow.dim != sweep.min_delta)
            return fail(name, "min-cut route disagrees with the sweep oracle at A=" +
                                  show_set(s, a),
                        serialize_structure(s));

        // d-closed implies self-sufficient, exhaustively
        auto delta_t = kernels::delta_table(r32);
        auto dim_t = kernels::dim_table(r32);
        int total = 1 << s.size();
        for (int mask = 0; mask < total; ++mask) {
            bool dclosed = true;
            for (int e = 0; e < s.size() && dclosed; ++e)
                if (!(mask >> e & 1) && dim_t[mask | (1 << e)] == dim_t[mask]) dclosed = false;
            if (dclosed && delta_t[mask] != dim_t[mask])
                return fail(name, "d-closed set not self-sufficient: " +
                                      show_set(s, Bits::from_low32(mask)),
                            serialize_structure(s));
        }
    }
    return pass(name, std::to_string(count) + " samples; certificate = sweep oracle = min-cut");
}

SuiteResult amalgam_additivity(const SuiteOptions& opts) {
    const std::string name = "amalgam-additivity";
    int count = opts.count ? opts.count : 200;
    SplitMix64 rng(opts.seed);
    const SymmetryGroup* groups[] = {&sym3(), &ns3(), &swap12()};
    int strong_premises = 0;
    for (int i = 0; i < count; ++i) {
        const SymmetryGroup& g = *groups[i % 3];
        int k = static_cast<int>(rng.below(4)); // shared base size 0..3
        std::vector<std::string> shared;
        for (int j = 1; j <= k; ++j) shared.push_back("s" + std::to_string(j));
        std::vector<std::vector<std::string>> base_rels;
        for (const auto& orb : all_possible_orbits(g, k)) {
            if (!rng.chance(1, 4)) continue;
            std::vector<std::string> t;
            for (int e : orb.entries) t.push_back(shared[e]);
            base_rels.push_back(std::move(t));
        }
        FiniteStructure base("base", g, shared, base_rels);
        auto extend = [&](const std::string& prefix, int max_extra) {
            int extra = 1 + static_cast<int>(rng.below(max_extra));
            std::vector<std::string> elems = shared;
            for (int j = 1; j <= extra; ++j) elems.push_back(prefix + std::to_string(j));
            std::sort(elems.begin(), elems.end());
            Bits amask;
            std::set<std::string> ss(shared.begin(), shared.end());
            for (std::size_t x = 0; x < elems.size(); ++x)
                if (ss.count(elems[x])) amask.set(static_cast<int>(x));
            std::vector<std::vector<std::string>> rels;
            for (const auto& r : base.relations()) {
                std::vector<std::string> t;
                for (int e : r.entries) t.push_back(base.element(e));
                rels.push_back(std::move(t));
            }
            auto pool = all_possible_orbits(g, static_cast<int>(elems.size()));
            for (const auto& orb : pool) {
                if (Bits::of(orb.entries).subset_of(amask)) continue;
                if (!rng.chance(1, 3)) continue;
                std::vector<std::string> t;
                for (int e : orb.entries) t.push_back(elems[e]);
                rels.push_back(std::move(t));
            }
            return FiniteStructure(prefix, g, elems, rels);
        };
        FiniteStructure b1 = extend("l", 4);
        FiniteStructure b2 = extend("r", 4);
        FiniteStructure d = simple_amalgam(b1, b2, shared);

        auto chk = verify_simple_amalgam(d, b1, b2, shared);
        if (!chk.ok)
            return fail(name, "free join failed additivity at X=" + show_set(d, *chk.counterexample),
                        serialize_structure(d));
        if (d.relation_count() != b1.relation_count() + b2.relation_count() -
                                      base.relation_count())
            return fail(name, "relation count identity failed", serialize_structure(d));

        // sub-amalgam observation on a random intermediate set
        Bits amask_d = d.mask_of(shared);
        Bits e_mask = amask_d | random_subset(rng, d.size(), d.size());
        FiniteStructure e_str = d.induced(e_mask);
        FiniteStructure e1 = d.induced(e_mask & d.mask_of(b1.elements()));
        FiniteStructure e2 = d.induced(e_mask & d.mask_of(b2.elements()));
        if (!verify_simple_amalgam(e_str, e1, e2, shared).ok)
            return fail(name, "sub-amalgam property failed", serialize_structure(d));

        if (is_self_sufficient(b1, b1.mask_of(shared))) {
            ++strong_premises;
            if (!is_self_sufficient(d, d.mask_of(b2.elements())))
                return fail(name, "second part lost self-sufficiency", serialize_structure(d));
            if (in_class(b2) && !in_class(d))
                return fail(name, "join of class members left the class", serialize_structure(d));
            if (is_self_sufficient(b2, b2.mask_of(shared)) &&
                !is_self_sufficient(d, amask_d))
                return fail(name, "base lost self-sufficiency", serialize_structure(d));
        }
    }
    return pass(name, std::to_string(count) + " joins verified; " +
                          std::to_string(strong_premises) + " with a strong first part");
}

SuiteResult transfer_equalities(const SuiteOptions& opts) {
    const std::string name = "transfer-equalities";
    int count = opts.count ? opts.count : 100;
    SplitMix64 rng(opts.seed);

    // in-class structure on exactly the given names
    auto random_on_names = [&](const SymmetryGroup& g, const std::vector<std::string>& names,
                               const std::string& label) {
        for (int attempt = 0;; ++attempt) {
            auto pool = all_possible_orbits(g, static_cast<int>(names.size()));
            std::vector<std::vector<std::string>> rels;
            for (const auto& orb : pool) {
                if (!rng.chance(1, attempt < 40 ? 4 : 100)) continue;
                std::vector<std::string> t;
                for (int e : orb.entries) t.push_back(names[e]);
                rels.push_back(std::move(t));
            }
            FiniteStructure s(label, g, names, rels);
            if (in_class(s)) return s;
        }
    };

    // desymmetrization keeps every relative delta over the base, and keeps
    // strong bases strong
    for (int i = 0; i < count; ++i) {
        const SymmetryGroup& g = (i % 2) ? swap12() : sym3();
        FiniteStructure b = random_class_member(rng, g, 9, 25, "dsy" + std::to_string(i));
        Bits a_mask = self_sufficient_closure(b, random_subset(rng, b.size(), 4)).closure;
        FiniteStructure a2 = random_on_names(ns3(), b.names_of(a_mask), "a2");
        FiniteStructure d = desymmetrize(b, a2).output;

        auto tb = kernels::delta_table(kernels::Rel32::of(b));
        auto td = kernels::delta_table(kernels::Rel32::of(d));
        std::uint32_t am = a_mask.low32();
        for (std::uint32_t x = 0; x < (1u << b.size()); ++x) {
            std::uint32_t xa = x & am;
            if (tb[x] - tb[xa] != td[x] - td[xa])
                return fail(name, "relative delta drifted at X=" +
                                      show_set(b, Bits::from_low32(x)),
                            serialize_structure(b));
        }
        if (!is_self_sufficient(d, a_mask) || !in_class(d))
            return fail(name, "desymmetrization broke the strong base", serialize_structure(d));
    }

    // relaxation / relaxed symmetrization good-set equalities
    for (int i = 0; i < count; ++i) {
        const SymmetryGroup& g = (i % 2) ? swap12() : sym3();
        FiniteStructure c("rlx", ns3(), {}, {});
        Bits a_mask;
        for (int attempt = 0;; ++attempt) {
            c = random_class_member(rng, ns3(), 8, 15, "rlx" + std::to_string(i));
            a_mask = self_sufficient_closure(c, random_subset(rng, c.size(), 4)).closure;
            int outside = c.relation_count() - c.relations_inside(a_mask);
            if (c.size() + outside <= 14) break;
        }
        FiniteStructure a2 = random_on_names(g, c.names_of(a_mask), "a2");
        FiniteStructure b = relax(c, c.names_of(a_mask)).output;
        FiniteStructure d = relaxed_symmetrize(c, a2).output;
        if (b.elements() != d.elements())
            return fail(name, "relaxation and symmetrization disagree on the universe",
                        serialize_structure(c));
        if (!is_self_sufficient(b, b.mask_of(c.elements())))
            return fail(name, "input not self-sufficient in its relaxation",
                        serialize_structure(b));

        auto r32b = kernels::Rel32::of(b);
        auto r32d = kernels::Rel32::of(d);
        auto delta_b = kernels::delta_table(r32b);
        auto delta_d = kernels::delta_table(r32d);
        auto dim_b = kernels::dim_table(r32b);
        auto dim_d = kernels::dim_table(r32d);
        std::uint32_t am = b.mask_of(c.names_of(a_mask)).low32();
        int mb = b.size();
        auto dclosed = [&](const std::vector<std::int16_t>& t, std::uint32_t y) {
            for (int e = 0; e < mb; ++e)
                if (!(y >> e & 1) && t[y | (1u << e)] == t[y]) return false;
            return true;
        };
        for (std::uint32_t y = 0; y < (1u << mb); ++y) {
            if (!dclosed(dim_b, y) && !dclosed(dim_d, y)) continue;
            std::uint32_t ya = y & am;
            if (delta_b[y] - delta_b[ya] != delta_d[y] - delta_d[ya])
                return fail(name, "good-set equality failed at Y=" +
                                      show_set(b, Bits::from_low32(y)),
                            serialize_structure(c));
        }
        if (!is_self_sufficient(d, d.mask_of(c.names_of(a_mask))) || !in_class(d))
            return fail(name, "symmetrization broke the strong base", serialize_structure(d));
    }

    // both isomorphism-extension steps, exhaustive dim equality inside
    int steps = std::max(10, count / 2);
    for (int i = 0; i < steps; ++i) {
        const SymmetryGroup& g = (i % 2) ? swap12() : sym3();
        try {
            FiniteStructure a1 = random_class_member(rng, g, 5, 30, "seed" + std::to_string(i));
            FiniteStructure empty_ns("e", ns3(), {}, {});
            FiniteStructure a2 = desymmetrize(a1, empty_ns).output;
            FiniteStructure c = strong_extension(rng, a1, 3, 3, "ext");
            isoext_step_g_to_ns(a1, a2, c);

            FiniteStructure m = random_class_member(rng, g, 5, 30, "m" + std::to_string(i));
            FiniteStructure b1 = desymmetrize(m, empty_ns).output;
            FiniteStructure c2 = strong_extension(rng, b1, 2, 2, "ext2");
            if (c2.size() + c2.relation_count() <= 14) isoext_step_ns_to_g(b1, m, c2);
        } catch (const Error& e) {
            return fail(name, std::string("isoext step rejected a valid instance: ") + e.what(),
                        "");
        }
    }
    return pass(name, std::to_string(count) + "+" + std::to_string(count) +
                          " transfer instances and " + std::to_string(steps) +
                          " isoext step pairs verified");
}

SuiteResult reduct_class(const SuiteOptions& opts) {
    const std::string name = "reduct-class";
    int count = opts.count ? opts.count : 200;
    SplitMix64 rng(opts.seed);
    for (int i = 0; i < count; ++i) {
        const SymmetryGroup& h = (i % 2) ? swap12() : ns3();
        FiniteStructure a = random_class_member(rng, h, 8, 30, "rc" + std::to_string(i));
        if (!check_reduces_class(a, ReductKind::Subgroup, &sym3(), nullptr))
            return fail(name, "subgroup reduct left the class", serialize_structure(a));
    }
    AtomicType q = base_exquisite_3();
    int exq_count = std::max(5, count / 4);
    for (int i = 0; i < exq_count; ++i) {
        FiniteStructure m("x", sym3(), {}, {});
        switch (i % 5) {
            case 0: m = canonical_structure(q); break;
            case 1: m = glued_copies(q, rng, 2, "glue2"); break;
            case 2: m = glued_copies(q, rng, 3, "glue3"); break;
            case 3: {
                FiniteStructure extra = random_class_member(rng, sym3(), 5, 30, "extra");
                auto parts = free_union_rename({canonical_structure(q), extra}, {});
                m = iterated_amalgam(parts, {});
                break;
            }
            default: m = random_class_member(rng, sym3(), 12, 15, "r" + std::to_string(i));
        }
        if (!check_reduces_class(m, ReductKind::Exquisite, nullptr, &q))
            return fail(name, "exquisite reduct left the class", serialize_structure(m));
    }
    return pass(name, std::to_string(count) + " subgroup + " + std::to_string(exq_count) +
                          " exquisite reducts stayed in class");
}

SuiteResult decollide_suite(const SuiteOptions& opts) {
    const std::string name = "decollide";
    int count = opts.count ? opts.count : 50;
    SplitMix64 rng(opts.seed);
    AtomicType q = base_exquisite_3();
    for (int i = 0; i < count; ++i) {
        FiniteStructure m = glued_copies(q, rng, 2 + static_cast<int>(rng.below(2)),
                                         "dc" + std::to_string(i));
        CollisionReport rep = collisions(m, q);
        if (rep.c <= 0)
            return fail(name, "glued instance has no collision", serialize_structure(m));
        auto heads = head_names(m, q);
        int guard = static_cast<int>(rep.w) + 1;
        while (rep.c > 0) {
            if (--guard < 0)
                return fail(name, "decollide did not terminate", serialize_structure(m));
            FiniteStructure next = decollide_step(m, q);
            CollisionReport rep2 = collisions(next, q);
            if (rep2.w >= rep.w)
                return fail(name, "weak-collision count failed to drop",
                            serialize_structure(next));
            if (!in_class(next))
                return fail(name, "decollide step left the class", serialize_structure(next));
            auto heads2 = head_names(next, q);
            for (const auto& h : heads)
                if (!heads2.count(h))
                    return fail(name, "a positive head was lost", serialize_structure(next));
            m = next;
            rep = rep2;
            heads = std::move(heads2);
        }
    }
    return pass(name, std::to_string(count) +
                          " collided instances decollided to c=0 with w strictly decreasing");
}

SuiteResult mixed_amalgams(const SuiteOptions& opts) {
    const std::string name = "mixed-amalgams";
    int count = opts.count ? opts.count : 100;
    SplitMix64 rng(opts.seed);

    for (int i = 0; i < count; ++i) {
        const SymmetryGroup& h = (i % 3 == 0) ? swap12() : ns3();
        const SymmetryGroup& g = (i % 3 == 2) ? swap12() : sym3();
        if (!h.is_subgroup_of(g)) continue;
        FiniteStructure a = random_class_member(rng, h, 7, 25, "mxa" + std::to_string(i));
        FiniteStructure ared = phi_reduct(a, g);
        FiniteStructure b = strong_extension(rng, ared, 3, 3, "mxb");
        FiniteStructure c = mixed_amalgam_subgroup(a, b);
        if (!is_self_sufficient(c, c.mask_of(a.elements())) || !phi_reduct(c, g).equal(b) ||
            !in_class(c))
            return fail(name, "subgroup mixed amalgam postcondition failed",
                        serialize_structure(c));
    }

    AtomicType q = base_exquisite_3();
    for (int i = 0; i < count; ++i) {
        FiniteStructure a("x", sym3(), {}, {});
        switch (i % 3) {
            case 0: a = canonical_structure(q); break;
            case 1: a = glued_copies(q, rng, 2, "mxg" + std::to_string(i)); break;
            default: a = random_class_member(rng, sym3(), 8, 15, "mxr" + std::to_string(i));
        }
        FiniteStructure f = exquisite_reduct(a, q);
        FiniteStructure b = strong_extension(rng, f, 2, 1 + static_cast<int>(rng.below(2)),
                                             "mxbe");
        FiniteStructure c = mixed_amalgam_exquisite(a, b, q);
        if (!is_self_sufficient(c, c.mask_of(a.elements())))
            return fail(name, "exquisite mixed amalgam lost the strong base",
                        serialize_structure(c));
        FiniteStructure cred = exquisite_reduct(c, q);
        if (cred.relation_count() != b.relation_count() ||
            !cred.induced(cred.mask_of(b.elements())).equal(b))
            return fail(name, "exquisite mixed amalgam reduct mismatch", serialize_structure(c));
    }
    return pass(name, std::to_string(count) + "+" + std::to_string(count) +
                          " mixed amalgams with verified postconditions");
}

SuiteResult generic_audit(const SuiteOptions& opts) {
    const std::string name = "generic-audit";
    std::uint64_t seed = opts.seed;
    GenericBuildState st = build_generic(sym3(), 4, 50, seed);
    AuditReport rep = audit_genericity(st.result(), st.catalog, 2, 3);

    std::map<std::pair<std::vector<std::string>, int>, bool> realized;
    for (const auto& row : rep.rows) realized[{row.base_elements, row.catalog_index}] = row.realized;

    int scheduled = 0;
    for (const auto& step : st.log) {
        if (!step.applied) continue;
        const CatalogEntry& e = st.catalog[step.catalog_index];
        if (e.b.size() > 3 || e.base_size() > 2) continue;
        ++scheduled;
        std::vector<std::string> base = step.base_image;
        std::sort(base.begin(), base.end());
        auto it = realized.find({base, step.catalog_index});
        if (it == realized.end())
            return fail(name, "scheduled pair missing from the audit", rep.to_text());
        if (!it->second)
            return fail(name, "scheduled pair unrealized in the final structure",
                        serialize_structure(st.result()));
    }

    GenericBuildState st2 = build_generic(sym3(), 4, 50, seed);
    AuditReport rep2 = audit_genericity(st2.result(), st2.catalog, 2, 3);
    if (serialize_structure(st.result()) != serialize_structure(st2.result()))
        return fail(name, "rebuild with the same seed differs", "");
    if (rep.to_text() != rep2.to_text())
        return fail(name, "audit report not byte-identical across reruns", "");

    return pass(name, "50-step build: " + std::to_string(scheduled) +
                          " scheduled small pairs all realized; report reproducible (" +
                          std::to_string(rep.rows.size()) + " rows)");
}

SuiteResult benign_pairs(const SuiteOptions& opts) {
    const std::string name = "benign-pairs";
    int count = opts.count ? opts.count : 50;
    SplitMix64 rng(opts.seed);

    for (int i = 0; i < count; ++i) {
        const SymmetryGroup& h = (i % 3 == 1) ? swap12() : ns3();
        const SymmetryGroup& g = (i % 3 == 2) ? swap12() : sym3();
        FiniteStructure f = random_class_member(rng, h, 8, 25, "bf" + std::to_string(i));
        auto [a, b] = benign_pair_subgroup(f, g);
        Bits fa = a.mask_of(f.elements());
        if (!is_self_sufficient(a, fa) || !is_self_sufficient(b, b.mask_of(f.elements())))
            return fail(name, "seed not self-sufficient in the benign pair",
                        serialize_structure(a));
        if (a.relation_count() == b.relation_count() ||
            find_isomorphism_over(a, b, f.elements()))
            return fail(name, "benign pair members are isomorphic over the seed",
                        serialize_structure(b));
        if (!phi_reduct(a, g).equal(phi_reduct(b, g)))
            return fail(name, "subgroup benign pair reducts differ", serialize_structure(b));
    }

    AtomicType q = base_exquisite_3();
    for (int i = 0; i < count; ++i) {
        FiniteStructure f("x", sym3(), {}, {});
        if (i % 7 == 0)
            f = canonical_structure(q).with_name("bfq" + std::to_string(i));
        else
            f = random_class_member(rng, sym3(), 9, 20, "bfe" + std::to_string(i));
        auto [a1, a2] = benign_pair_exquisite(f, q);
        if (!is_self_sufficient(a1, a1.mask_of(f.elements())) ||
            !is_self_sufficient(a2, a2.mask_of(f.elements())))
            return fail(name, "seed not self-sufficient in the benign pair",
                        serialize_structure(a1));
        if (a1.relation_count() == a2.relation_count() ||
            find_isomorphism_over(a1, a2, f.elements()))
            return fail(name, "benign pair members are isomorphic over the seed",
                        serialize_structure(a2));
        if (!exquisite_reduct(a1, q).equal(exquisite_reduct(a2, q)))
            return fail(name, "exquisite benign pair reducts differ", serialize_structure(a2));
    }
    return pass(name, std::to_string(count) + "+" + std::to_string(count) +
                          " benign pairs certified");
}

} // namespace

FiniteStructure random_structure(SplitMix64& rng, const SymmetryGroup& g, int max_size,
                                 int percent_density, const std::string& name) {
    int m = static_cast<int>(rng.below(max_size + 1));
    std::vector<std::string> elems;
    for (int i = 1; i <= m; ++i) elems.push_back("x" + padded2(i));
    auto pool = all_possible_orbits(g, m);
    std::vector<std::vector<int>> rels;
    for (const auto& orb : pool)
        if (rng.chance(percent_density, 100)) rels.push_back(orb.entries);
    return FiniteStructure::from_indices(name, g, elems, rels);
}

FiniteStructure random_class_member(SplitMix64& rng, const SymmetryGroup& g, int max_size,
                                    int percent_density, const std::string& name) {
    // Size drawn once (biased large); relation count re-drawn under the
    // class ceiling r <= |D|, shrinking when rejection bites. Plain density
    // sampling would select for near-empty structures.
    int m = max_size <= 0
                ? 0
                : std::max(1 + static_cast<int>(rng.below(max_size)),
                           1 + static_cast<int>(rng.below(max_size)));
    std::vector<std::string> elems;
    for (int i = 1; i <= m; ++i) elems.push_back("x" + padded2(i));
    auto pool = all_possible_orbits(g, m);
    long long soft = static_cast<long long>(pool.size()) * percent_density / 100;
    int cap = static_cast<int>(std::min<long long>({static_cast<long long>(pool.size()),
                                                    static_cast<long long>(m), soft + 1}));
    for (int attempt = 0; attempt < 300; ++attempt) {
        int ceiling = std::max(0, cap - attempt / 30);
        int target = ceiling ? static_cast<int>(rng.below(ceiling + 1)) : 0;
        std::set<std::size_t> picked;
        while (static_cast<int>(picked.size()) < target) picked.insert(rng.below(pool.size()));
        std::vector<std::vector<int>> rels;
        for (auto i : picked) rels.push_back(pool[i].entries);
        FiniteStructure s = FiniteStructure::from_indices(name, g, elems, rels);
        if (in_class(s)) return s;
    }
    return FiniteStructure(name, g, elems, {});
}

const std::vector<SuiteSpec>& all_suites() {
    static std::vector<SuiteSpec> suites = {
        {"base-witness", base_witness},
        {"lift-chain", lift_chain},
        {"submodularity", submodularity},
        {"pregeometry", pregeometry},
        {"closure-oracles", closure_oracles},
        {"amalgam-additivity", amalgam_additivity},
        {"transfer-equalities", transfer_equalities},
        {"reduct-class", reduct_class},
        {"decollide", decollide_suite},
        {"mixed-amalgams", mixed_amalgams},
        {"generic-audit", generic_audit},
        {"benign-pairs", benign_pairs},
    };
    return suites;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
    for (const auto& s : all_suites())
        if (s.name == name) return s.run(opts);
    err::raise("usage", "unknown suite '" + name + "'");
}

} // namespace fh::suites
