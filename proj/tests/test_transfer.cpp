#include <doctest.h>

#include "fh/error.hpp"
#include "fh/kernels.hpp"
#include "fh/predim.hpp"
#include "fh/rng.hpp"
#include "fh/suites.hpp"
#include "fh/transfer.hpp"

using namespace fh;

namespace {

FiniteStructure empty_ns() { return FiniteStructure("e", SymmetryGroup::trivial(3), {}, {}); }

} // namespace

TEST_CASE("desymmetrize") {
    auto s3 = SymmetryGroup::full(3);
    FiniteStructure b("b", s3, {"p", "q", "x", "y"}, {{"x", "y", "p"}});
    FiniteStructure a_ns("a", SymmetryGroup::trivial(3), {"p", "q"}, {});
    TransferResult r = desymmetrize(b, a_ns);
    CHECK(r.output.size() == 4);
    CHECK(r.output.relation_count() == 1); // one ordered representative
    CHECK(r.output.group().is_trivial());
    CHECK(r.fresh_elements.empty());

    // nothing outside the base: the output is the base structure on B
    FiniteStructure b2("b2", s3, {"p", "q", "r"}, {{"p", "q", "r"}});
    FiniteStructure a2("a2", SymmetryGroup::trivial(3), {"p", "q", "r"},
                       {{"q", "p", "r"}, {"r", "q", "p"}});
    FiniteStructure d2 = desymmetrize(b2, a2).output;
    CHECK(d2.equal(a2));

    // relative-delta equality for every X
    SplitMix64 rng(41);
    for (int i = 0; i < 30; ++i) {
        FiniteStructure bb = suites::random_class_member(rng, s3, 8, 30, "bb");
        Bits am;
        for (int e = 0; e < bb.size(); ++e)
            if (rng.chance(1, 3)) am.set(e);
        std::vector<std::vector<std::string>> arels;
        for (const auto& orb : all_possible_orbits(SymmetryGroup::trivial(3), am.count())) {
            if (!rng.chance(1, 6)) continue;
            auto names = bb.names_of(am);
            std::vector<std::string> t;
            for (int e : orb.entries) t.push_back(names[e]);
            arels.push_back(t);
        }
        FiniteStructure ans("a", SymmetryGroup::trivial(3), bb.names_of(am), arels);
        FiniteStructure d = desymmetrize(bb, ans).output;
        for (std::uint32_t x = 0; x < (1u << bb.size()); ++x) {
            Bits xb = Bits::from_low32(x);
            Bits xa = xb & am;
            CHECK(delta(bb, xb) - delta(bb, xa) == delta(d, xb) - delta(d, xa));
        }
    }
}

TEST_CASE("relax") {
    auto id3 = SymmetryGroup::trivial(3);
    FiniteStructure inside("c", id3, {"p", "q", "r"}, {{"p", "q", "r"}});
    CHECK(relax(inside, {"p", "q", "r"}).output.equal(inside)); // nothing outside A

    FiniteStructure one("c", id3, {"x", "y", "z"}, {{"x", "y", "z"}});
    TransferResult r = relax(one, {});
    CHECK(r.output.size() == 4);
    CHECK(r.output.relation_count() == 2);
    CHECK(delta(r.output, r.output.universe_mask()) == 2); // n - 1
    CHECK(r.fresh_elements.size() == 1);
    // the new relation holds the first n-1 coordinates of the old one
    bool found = false;
    for (const auto& rel : r.output.relations()) {
        std::vector<std::string> names;
        for (int e : rel.entries) names.push_back(r.output.element(e));
        if (names == std::vector<std::string>{r.fresh_elements[0], "x", "y"}) found = true;
    }
    CHECK(found);

    SplitMix64 rng(43);
    for (int i = 0; i < 30; ++i) {
        FiniteStructure c = suites::random_class_member(rng, id3, 7, 15, "c");
        Bits am;
        for (int e = 0; e < c.size(); ++e)
            if (rng.chance(1, 3)) am.set(e);
        FiniteStructure out = relax(c, c.names_of(am)).output;
        CHECK(is_self_sufficient(out, out.mask_of(c.elements())));
    }
}

TEST_CASE("relaxed symmetrize") {
    auto id3 = SymmetryGroup::trivial(3);
    auto s3 = SymmetryGroup::full(3);

    FiniteStructure inside("c", id3, {"p", "q", "r", "s"}, {{"p", "q", "r"}});
    FiniteStructure ag("a", s3, {"p", "q", "r"}, {{"p", "q", "r"}});
    FiniteStructure d0 = relaxed_symmetrize(inside, ag).output;
    CHECK(d0.size() == 4); // universe stays C
    CHECK(d0.relation_count() == 1);
    CHECK(d0.group().is_full());

    FiniteStructure one("c", id3, {"x", "y", "z"}, {{"x", "y", "z"}});
    FiniteStructure a_empty("a", s3, {}, {});
    TransferResult r = relaxed_symmetrize(one, a_empty);
    CHECK(r.output.size() == 4);
    CHECK(r.output.relation_count() == 2);
    CHECK(delta(r.output, r.output.universe_mask()) == 2);
    // exactly two orbits through the fresh point
    int w = r.output.index_of(r.fresh_elements[0]);
    CHECK(r.output.degrees()[w] == 2);
}

TEST_CASE("isoext step from the symmetric side") {
    auto s3 = SymmetryGroup::full(3);
    SplitMix64 rng(47);

    // trivial extension: C = A1 gives B2 = A2
    FiniteStructure a1 = suites::random_class_member(rng, s3, 5, 35, "a1");
    FiniteStructure a2 = desymmetrize(a1, empty_ns()).output;
    IsoextStep st = isoext_step_g_to_ns(a1, a2, a1);
    CHECK(st.b2.equal(a2));

    // one orbit over the empty base
    FiniteStructure c1("c", s3, {"x", "y", "z"}, {{"x", "y", "z"}});
    FiniteStructure e_g("eg", s3, {}, {});
    FiniteStructure e_ns = empty_ns();
    IsoextStep st2 = isoext_step_g_to_ns(e_g, e_ns, c1);
    CHECK(st2.b2.relation_count() == 1);

    // random admissible triples; the step verifies subset-wise dim equality
    // internally, and the flow route re-checks it independently here
    for (int i = 0; i < 12; ++i) {
        FiniteStructure seed = suites::random_class_member(rng, s3, 5, 30, "s");
        FiniteStructure seed_ns = desymmetrize(seed, empty_ns()).output;
        // relation-free strong extension
        std::vector<std::string> elems = seed.elements();
        elems.push_back("zx1");
        elems.push_back("zx2");
        std::vector<std::vector<std::string>> rels;
        for (const auto& r : seed.relations()) {
            std::vector<std::string> t;
            for (int e : r.entries) t.push_back(seed.element(e));
            rels.push_back(t);
        }
        FiniteStructure c("c", s3, elems, rels);
        IsoextStep st3 = isoext_step_g_to_ns(seed, seed_ns, c);
        for (std::uint32_t x = 0; x < (1u << st3.b1.size()); ++x) {
            Bits xb = Bits::from_low32(x);
            CHECK(dim(st3.b1, xb) == dim(st3.b2, xb));
        }
    }

    // dimension mismatch between seeds is rejected with a witness
    FiniteStructure bad_ns("bad", SymmetryGroup::trivial(3), a1.elements(), {});
    if (a1.relation_count() > 0)
        CHECK_THROWS_AS(isoext_step_g_to_ns(a1, bad_ns, a1), Error);
}

TEST_CASE("isoext step from the ordered side") {
    auto s3 = SymmetryGroup::full(3);
    SplitMix64 rng(53);

    FiniteStructure m = suites::random_class_member(rng, s3, 5, 35, "m");
    FiniteStructure a1 = desymmetrize(m, empty_ns()).output;
    IsoextStep st = isoext_step_ns_to_g(a1, m, a1);
    CHECK(st.b1.equal(a1)); // no relations outside the base
    CHECK(st.b2.equal(m));

    for (int i = 0; i < 10; ++i) {
        FiniteStructure g_seed = suites::random_class_member(rng, s3, 5, 30, "g");
        FiniteStructure ns_seed = desymmetrize(g_seed, empty_ns()).output;
        std::vector<std::string> elems = ns_seed.elements();
        elems.push_back("zz1");
        std::vector<std::vector<std::string>> rels;
        for (const auto& r : ns_seed.relations()) {
            std::vector<std::string> t;
            for (int e : r.entries) t.push_back(ns_seed.element(e));
            rels.push_back(t);
        }
        // one new ordered relation through the fresh point when possible
        if (ns_seed.size() >= 2) {
            auto names = ns_seed.elements();
            rels.push_back({"zz1", names[0], names[1]});
        }
        FiniteStructure c("c", SymmetryGroup::trivial(3), elems, rels);
        if (!is_self_sufficient(c, c.mask_of(ns_seed.elements()))) continue;
        IsoextStep st2 = isoext_step_ns_to_g(ns_seed, g_seed, c);
        CHECK(st2.b1.elements() == st2.b2.elements());
        for (std::uint32_t x = 0; x < (1u << st2.b1.size()); ++x) {
            Bits xb = Bits::from_low32(x);
            CHECK(dim(st2.b1, xb) == dim(st2.b2, xb));
        }
        CHECK(is_self_sufficient(st2.b2, st2.b2.mask_of(g_seed.elements())));
    }
}

TEST_CASE("d-closed trace equalities behind the extension lemma") {
    // On desymmetrization instances: if Y is d-closed in B1 then the two
    // sides agree on delta of Y's trace in the base, and relative-delta
    // agreement on d-closed sets forces full dim equality.
    auto s3 = SymmetryGroup::full(3);
    SplitMix64 rng(59);
    for (int i = 0; i < 15; ++i) {
        FiniteStructure b = suites::random_class_member(rng, s3, 7, 30, "b");
        Bits am = self_sufficient_closure(b, Bits::from_low32(rng.below(1u << b.size()))).closure;
        FiniteStructure a2("a2", SymmetryGroup::trivial(3), b.names_of(am), {});
        // seeds must agree on dims over the base; desymmetrizing over the
        // empty set realizes that
        FiniteStructure base_g = b.induced(am);
        FiniteStructure a2_match = desymmetrize(base_g, empty_ns()).output;
        FiniteStructure d = desymmetrize(b, a2_match).output;
        auto t1 = kernels::dim_table(kernels::Rel32::of(b));
        auto t2 = kernels::dim_table(kernels::Rel32::of(d));
        int n = b.size();
        for (std::uint32_t y = 0; y < (1u << n); ++y) {
            bool closed = true;
            for (int e = 0; e < n && closed; ++e)
                if (!(y >> e & 1) && t1[y | (1u << e)] == t1[y]) closed = false;
            if (!closed) continue;
            Bits yb = Bits::from_low32(y);
            CHECK(delta(b, yb & am) == delta(d, yb & am));
        }
        for (std::uint32_t x = 0; x < (1u << n); ++x) CHECK(t1[x] == t2[x]);
    }
}

TEST_CASE("composing both steps extends dimension-matched maps") {
    auto s3 = SymmetryGroup::full(3);
    SplitMix64 rng(61);
    FiniteStructure a1 = suites::random_class_member(rng, s3, 4, 35, "a1");
    FiniteStructure a2 = desymmetrize(a1, empty_ns()).output;

    // grow once on the symmetric side
    std::vector<std::string> elems = a1.elements();
    elems.push_back("q1");
    elems.push_back("q2");
    elems.push_back("q3");
    std::vector<std::vector<std::string>> rels;
    for (const auto& r : a1.relations()) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(a1.element(e));
        rels.push_back(t);
    }
    rels.push_back({"q1", "q2", "q3"});
    FiniteStructure c("c", s3, elems, rels);
    REQUIRE(is_self_sufficient(c, c.mask_of(a1.elements())));
    IsoextStep first = isoext_step_g_to_ns(a1, a2, c);

    // then once on the ordered side, over the grown pair
    FiniteStructure c2 = relax(first.b2, first.b2.elements()).output; // identity relax
    IsoextStep second = isoext_step_ns_to_g(first.b2, first.b1, first.b2);
    CHECK(second.b1.equal(first.b2));
    CHECK(second.b2.equal(first.b1));
    (void)c2;
}
