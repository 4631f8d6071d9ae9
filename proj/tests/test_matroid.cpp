#include <doctest.h>

#include "fh/exquisite.hpp"
#include "fh/matroid.hpp"
#include "fh/rng.hpp"
#include "fh/suites.hpp"
#include "fh/transfer.hpp"

using namespace fh;

TEST_CASE("rank basics") {
    auto s3 = SymmetryGroup::full(3);
    Matroid single(FiniteStructure("s", s3, {"x", "y", "z"}, {{"x", "y", "z"}}));
    CHECK(single.rank(Bits::none()) == 0);
    CHECK(single.rank(single.source().universe_mask()) == 2); // n - 1

    Matroid base(canonical_structure(base_exquisite_3()));
    CHECK(base.rank(base.source().universe_mask()) == 2);
}

TEST_CASE("closure via the rank oracle") {
    Matroid base(canonical_structure(base_exquisite_3()));
    const FiniteStructure& cs = base.source();

    CHECK(base.closure(cs.universe_mask()) == cs.universe_mask());

    auto s3 = SymmetryGroup::full(3);
    Matroid free(FiniteStructure("f", s3, {"x", "y", "z"}, {}));
    Bits y = free.source().mask_of({"x", "y"});
    CHECK(free.closure(y) == y);

    Bits pair = cs.mask_of({"a1", "b1"});
    Bits cl = base.closure(pair);
    Bits expect = pair;
    for (int e = 0; e < cs.size(); ++e) {
        Bits with = pair;
        with.set(e);
        if (base.rank(with) == base.rank(pair)) expect.set(e);
    }
    CHECK(cl == expect);
    // idempotent, monotone
    CHECK(base.closure(cl) == cl);
}

TEST_CASE("independent sets up to size two") {
    Matroid base(canonical_structure(base_exquisite_3()));
    auto sets = base.independent_sets(2);
    // oracle: exhaustive rank over all sets of size <= 2
    long long expect = 0;
    int n = base.ground_size();
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        Bits b = Bits::from_low32(m);
        if (b.count() <= 2 && base.rank(b) == b.count()) ++expect;
    }
    CHECK(static_cast<long long>(sets.size()) == expect);
    for (const auto& s : sets) CHECK(base.rank(s) == s.count());
}

TEST_CASE("associated geometry") {
    auto s3 = SymmetryGroup::full(3);
    Matroid free(FiniteStructure("f", s3, {"x", "y", "z", "w"}, {}));
    auto geo = associated_geometry(free);
    CHECK(geo.rank_zero.empty());
    CHECK(geo.classes.size() == 4);
    for (const auto& c : geo.classes) CHECK(c.count() == 1);

    // three orbits through a common pair: all points fall in one class
    Matroid fused(FiniteStructure(
        "g", s3, {"x", "y", "z", "w"}, {{"x", "y", "z"}, {"x", "y", "w"}, {"x", "z", "w"}}));
    CHECK(fused.rank(fused.source().universe_mask()) == 1);
    auto geo2 = associated_geometry(fused);
    CHECK(geo2.rank_zero.empty());
    CHECK(geo2.classes.size() == 1);
    CHECK(geo2.classes[0].count() == 4);
    CHECK(geo2.class_rank(fused, {0}) == 1);

    // geometry axioms on the quotient: singleton classes are closed
    Matroid base(canonical_structure(base_exquisite_3()));
    auto geo3 = associated_geometry(base);
    for (std::size_t c = 0; c < geo3.classes.size(); ++c)
        CHECK(geo3.class_rank(base, {static_cast<int>(c)}) == 1);
}

TEST_CASE("pregeometry isomorphism search") {
    SplitMix64 rng(17);
    FiniteStructure m = suites::random_class_member(rng, SymmetryGroup::full(3), 5, 40, "m");
    Matroid m1(m), m2(m);
    auto id = pregeometry_isomorphic(m1, m2);
    REQUIRE(id.has_value());
    for (const auto& [k, v] : id->map) CHECK(m.has_element(v));

    Matroid small(FiniteStructure("s", SymmetryGroup::full(3), {"x", "y"}, {}));
    CHECK(!pregeometry_isomorphic(m1, small).has_value());

    // a 5-element structure vs its desymmetrization: ranks coincide pointwise
    FiniteStructure partner = desymmetrize(m, FiniteStructure("e", SymmetryGroup::trivial(3),
                                                              {}, {}))
                                  .output;
    auto emb = pregeometry_isomorphic(Matroid(m), Matroid(partner));
    CHECK(emb.has_value());
}

TEST_CASE("exchange and basis equicardinality on small class members") {
    SplitMix64 rng(23);
    for (int i = 0; i < 20; ++i) {
        const SymmetryGroup& g = (i % 2) ? SymmetryGroup::trivial(3) : SymmetryGroup::full(3);
        FiniteStructure m = suites::random_class_member(rng, g, 7, 35, "m");
        Matroid mat(m);
        int n = m.size();
        for (std::uint32_t y = 0; y < (1u << n); ++y) {
            Bits yb = Bits::from_low32(y);
            Bits cl = mat.closure(yb);
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    if (a == b || yb.test(a) || yb.test(b)) continue;
                    Bits yb_b = yb;
                    yb_b.set(b);
                    bool a_in = mat.closure(yb_b).test(a) && !cl.test(a);
                    if (a_in) {
                        Bits yb_a = yb;
                        yb_a.set(a);
                        CHECK(mat.closure(yb_a).test(b));
                    }
                }
            }
            // greedy bases from two different element orders have equal size
            auto greedy = [&](bool reverse) {
                Bits basis;
                auto idx = yb.to_indices();
                if (reverse) std::reverse(idx.begin(), idx.end());
                for (int e : idx) {
                    Bits cand = basis;
                    cand.set(e);
                    if (mat.rank(cand) == cand.count()) basis = cand;
                }
                return basis;
            };
            Bits b1 = greedy(false), b2 = greedy(true);
            CHECK(b1.count() == b2.count());
            CHECK(b1.count() == mat.rank(yb));
        }
    }
}
