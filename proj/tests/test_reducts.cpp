#include <doctest.h>

#include "fh/amalgam.hpp"
#include "fh/error.hpp"
#include "fh/exquisite.hpp"
#include "fh/generic.hpp"
#include "fh/predim.hpp"
#include "fh/reducts.hpp"
#include "fh/rng.hpp"
#include "fh/suites.hpp"

using namespace fh;

namespace {

const SymmetryGroup& s3() {
    static SymmetryGroup g = SymmetryGroup::full(3);
    return g;
}
const SymmetryGroup& id3() {
    static SymmetryGroup g = SymmetryGroup::trivial(3);
    return g;
}

} // namespace

TEST_CASE("subgroup reduct") {
    FiniteStructure m("m", id3(), {"x", "y", "z"}, {{"x", "y", "z"}});
    FiniteStructure same = phi_reduct(m, id3());
    CHECK(same.equal(m));

    FiniteStructure red = phi_reduct(m, s3());
    CHECK(red.relation_count() == 1);
    CHECK(red.group().is_full());

    FiniteStructure two("m2", id3(), {"x", "y", "z"}, {{"x", "y", "z"}, {"y", "x", "z"}});
    FiniteStructure red2 = phi_reduct(two, s3());
    CHECK(red2.relation_count() == 1);
    CHECK(delta(red2, red2.universe_mask()) == delta(two, two.universe_mask()) + 1);

    FiniteStructure symm("s", s3(), {"x", "y", "z"}, {{"x", "y", "z"}});
    CHECK_THROWS_AS(phi_reduct(symm, id3()), Error); // not a subgroup
}

TEST_CASE("subgroup reduct is functorial and never lowers delta") {
    SplitMix64 rng(71);
    for (int i = 0; i < 30; ++i) {
        const SymmetryGroup& h = (i % 2) ? id3()
                                         : SymmetryGroup::generated(
                                               3, {Permutation::from_one_based({2, 1, 3})});
        FiniteStructure m = suites::random_structure(rng, h, 7, 35, "m");
        FiniteStructure red = phi_reduct(m, s3());
        for (std::uint32_t sset = 0; sset < (1u << m.size()); ++sset) {
            Bits sb = Bits::from_low32(sset);
            CHECK(phi_reduct(m.induced(sb), s3()).equal(red.induced(sb)));
            CHECK(delta(m, sb) <= delta(red, sb)); // r_H >= r_G pointwise
        }
    }
}

TEST_CASE("exquisite reduct") {
    AtomicType q = base_exquisite_3();
    FiniteStructure cs = canonical_structure(q);
    FiniteStructure red = exquisite_reduct(cs, q);
    REQUIRE(red.relation_count() == 1);
    std::vector<std::string> head;
    for (int e : red.relations()[0].entries) head.push_back(red.element(e));
    CHECK(head == std::vector<std::string>{"a1", "a2", "a3"});

    FiniteStructure bare("b", s3(), {"x", "y", "z"}, {});
    CHECK(exquisite_reduct(bare, q).relation_count() == 0);

    auto parts = free_union_rename({cs, cs}, {});
    FiniteStructure join = simple_amalgam(parts[0], parts[1], {});
    CHECK(exquisite_reduct(join, q).relation_count() == 2);
}

TEST_CASE("enclosure checks") {
    AtomicType q = base_exquisite_3();
    SplitMix64 rng(73);
    FiniteStructure m = suites::random_structure(rng, id3(), 7, 30, "m");
    for (std::uint32_t sset = 0; sset < (1u << m.size()); sset += 3)
        CHECK(check_encloses(m, Bits::from_low32(sset), ReductKind::Subgroup, &s3(), nullptr));

    FiniteStructure cs = canonical_structure(q);
    CHECK(check_encloses(cs, cs.universe_mask(), ReductKind::Exquisite, nullptr, &q));

    // clipping one witness point destroys enclosure for a non-strong subset
    Bits clipped = cs.universe_mask();
    clipped.reset(cs.index_of("b8"));
    CHECK(!is_self_sufficient(cs, clipped));
    CHECK(!check_encloses(cs, clipped, ReductKind::Exquisite, nullptr, &q));

    // strong subsets do enclose
    Bits strong_sub = self_sufficient_closure(cs, cs.mask_of({"a1"})).closure;
    CHECK(check_encloses(cs, strong_sub, ReductKind::Exquisite, nullptr, &q));
}

TEST_CASE("class preservation and strength comparison") {
    SplitMix64 rng(79);
    AtomicType q = base_exquisite_3();
    for (int i = 0; i < 20; ++i) {
        FiniteStructure a = suites::random_class_member(rng, id3(), 8, 25, "a");
        CHECK(check_reduces_class(a, ReductKind::Subgroup, &s3(), nullptr));
        Bits strong = self_sufficient_closure(a, Bits::from_low32(rng.below(1u << a.size())))
                          .closure;
        CHECK(check_stronger(a, strong, ReductKind::Subgroup, &s3(), nullptr));
    }
    FiniteStructure cs = canonical_structure(q);
    CHECK(check_reduces_class(cs, ReductKind::Exquisite, nullptr, &q));
    CHECK(check_stronger(cs, cs.universe_mask(), ReductKind::Exquisite, nullptr, &q));
    CHECK(check_stronger(cs, Bits::none(), ReductKind::Exquisite, nullptr, &q));
}

TEST_CASE("mixed amalgam, subgroup case") {
    FiniteStructure a("a", id3(), {"x", "y", "z"}, {{"x", "y", "z"}});
    FiniteStructure ared = phi_reduct(a, s3());
    FiniteStructure c0 = mixed_amalgam_subgroup(a, ared);
    CHECK(c0.equal(a)); // B = reduct(A) gives back A

    // one new symmetric orbit: one new ordered relation, equal delta drop
    std::vector<std::string> elems = ared.elements();
    elems.push_back("w");
    std::vector<std::vector<std::string>> rels{{"x", "y", "z"}, {"x", "y", "w"}};
    FiniteStructure b("b", s3(), elems, rels);
    REQUIRE(is_self_sufficient(b, b.mask_of(a.elements())));
    FiniteStructure c = mixed_amalgam_subgroup(a, b);
    CHECK(c.relation_count() == a.relation_count() + 1);
    CHECK(delta(c, c.universe_mask()) == delta(b, b.universe_mask()));
    CHECK(phi_reduct(c, s3()).equal(b));
    CHECK(is_self_sufficient(c, c.mask_of(a.elements())));

    // rejected when the base is not strong in B
    FiniteStructure bad("bad", s3(), elems,
                        {{"x", "y", "z"}, {"x", "y", "w"}, {"x", "z", "w"}, {"y", "z", "w"}});
    CHECK(!is_self_sufficient(bad, bad.mask_of(a.elements())));
    CHECK_THROWS_AS(mixed_amalgam_subgroup(a, bad), Error);
}

TEST_CASE("mixed amalgam, exquisite case") {
    AtomicType q = base_exquisite_3();
    FiniteStructure a = canonical_structure(q);
    FiniteStructure f = exquisite_reduct(a, q);

    FiniteStructure c0 = mixed_amalgam_exquisite(a, f, q);
    CHECK(c0.equal(a));

    // a single new head over the canonical structure
    std::vector<std::string> elems = f.elements();
    elems.push_back("v");
    std::vector<std::vector<std::string>> rels;
    for (const auto& r : f.relations()) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(f.element(e));
        rels.push_back(t);
    }
    rels.push_back({"v", "b1", "b2"});
    FiniteStructure b("b", id3(), elems, rels);
    REQUIRE(is_self_sufficient(b, b.mask_of(f.elements())));
    FiniteStructure c = mixed_amalgam_exquisite(a, b, q);
    CHECK(c.size() == a.size() + 1 + q.tail_len);
    CHECK(c.relation_count() == a.relation_count() + q.t_q());
    FiniteStructure cred = exquisite_reduct(c, q);
    CHECK(cred.relation_count() == b.relation_count());
    CHECK(cred.induced(cred.mask_of(b.elements())).equal(b));
}

TEST_CASE("benign pairs, subgroup case") {
    FiniteStructure empty("f", id3(), {}, {});
    auto [a0, b0] = benign_pair_subgroup(empty, s3());
    CHECK(a0.relation_count() == 1);
    CHECK(b0.relation_count() == 2);
    CHECK(phi_reduct(a0, s3()).equal(phi_reduct(b0, s3())));
    CHECK(phi_reduct(a0, s3()).relation_count() == 1);

    SplitMix64 rng(83);
    for (int i = 0; i < 10; ++i) {
        FiniteStructure f = suites::random_class_member(rng, id3(), 8, 25, "f");
        auto [a, b] = benign_pair_subgroup(f, s3());
        CHECK(is_self_sufficient(a, a.mask_of(f.elements())));
        CHECK(is_self_sufficient(b, b.mask_of(f.elements())));
        CHECK(a.relation_count() != b.relation_count());
        CHECK(!find_isomorphism_over(a, b, f.elements()).has_value());
        CHECK(phi_reduct(a, s3()).equal(phi_reduct(b, s3())));
    }
    CHECK_THROWS_AS(benign_pair_subgroup(empty, id3()), Error); // not proper
}

TEST_CASE("benign pairs, exquisite case") {
    AtomicType q = base_exquisite_3();
    FiniteStructure empty("f", s3(), {}, {});
    auto [e1, e2] = benign_pair_exquisite(empty, q);
    CHECK(exquisite_reduct(e1, q).relation_count() == 0);
    CHECK(exquisite_reduct(e2, q).relation_count() == 0);

    FiniteStructure cs = canonical_structure(q);
    auto [a1, a2] = benign_pair_exquisite(cs, q);
    CHECK(a1.relation_count() + 1 == a2.relation_count());
    FiniteStructure r1 = exquisite_reduct(a1, q);
    FiniteStructure r2 = exquisite_reduct(a2, q);
    CHECK(r1.equal(r2));
    CHECK(r1.relation_count() == 1); // the witness head survives untouched
    CHECK(!find_isomorphism_over(a1, a2, cs.elements()).has_value());
}

TEST_CASE("the r-copy argument never leaves the class after reducing") {
    SplitMix64 rng(89);
    for (int i = 0; i < 12; ++i) {
        FiniteStructure b = suites::random_class_member(rng, id3(), 6, 30, "b");
        Bits a_mask =
            self_sufficient_closure(b, Bits::from_low32(rng.below(1u << b.size()))).closure;
        auto shared = b.names_of(a_mask);
        int r = delta(phi_reduct(b.induced(a_mask), s3()),
                      phi_reduct(b.induced(a_mask), s3()).universe_mask()) +
                1;
        std::vector<FiniteStructure> copies(static_cast<std::size_t>(std::max(1, r)), b);
        auto parts = free_union_rename(copies, shared);
        FiniteStructure d = iterated_amalgam(parts, shared);
        CHECK(in_class(d));
        CHECK(in_class(phi_reduct(d, s3())));
    }
}

TEST_CASE("reducts of generic approximants realize reduced templates") {
    // small end-to-end instance of the reduct-pipeline plumbing: build an
    // ordered approximant, reduce it to the symmetric level, and re-run the
    // realized template extensions inside the reduct
    GenericBuildState st = build_generic(id3(), 3, 12, 5);
    FiniteStructure m = st.result();
    FiniteStructure red = phi_reduct(m, s3());

    int replayed = 0;
    for (const auto& step : st.log) {
        if (!step.applied) continue;
        const CatalogEntry& entry = st.catalog[step.catalog_index];
        Bits a_mask = red.mask_of(step.base_image);
        // the strong base stays strong in the reduct
        REQUIRE(is_self_sufficient(m, m.mask_of(step.base_image)));
        CHECK(is_self_sufficient(red, a_mask));
        // rename the reduced template onto the image and re-realize
        FiniteStructure tmpl = phi_reduct(entry.b, s3());
        auto iso = find_isomorphism_extending(phi_reduct(entry.base(), s3()),
                                              red.induced(a_mask), {});
        REQUIRE(iso.has_value());
        std::map<std::string, std::string> ren = iso->map;
        std::vector<std::string> taken = red.elements();
        for (const auto& e : tmpl.elements()) {
            if (ren.count(e)) continue;
            std::string fr = fresh_name("x_" + e, taken);
            taken.push_back(fr);
            ren[e] = fr;
        }
        CHECK(extension_property_test(red, a_mask, tmpl.renamed(ren)).has_value());
        ++replayed;
    }
    CHECK(replayed > 0);
}
