#include "doctest.h"
#include "oracles.hpp"
#include "yoccoz/tree.hpp"

using namespace yoccoz;

namespace {

// Root of degree 3 over H=1 with one critical child of degree 2 and one leaf.
FiniteTree small_tree() {
    FiniteTree t(1, 3);
    const std::vector<std::vector<ChildSpec>> spec{{{2, 0}, {1, 0}}};
    return t.add_level(spec);
}

bool has_issue(const ValidationReport& r, Axiom a) {
    for (const auto& i : r.issues)
        if (i.axiom == a) return true;
    return false;
}

}  // namespace

TEST_CASE("new tree holds only the root") {
    const FiniteTree t(1, 3);
    CHECK(t.length() == 0);
    CHECK(t.size() == 1);
    CHECK(t.degree(t.ref(0)) == 3);
    CHECK(t.degree(VertexRef::spine(-4)) == 3);
    CHECK(check_axioms(t).ok());
}

TEST_CASE("spine moves by H") {
    const FiniteTree t(2, 4);
    CHECK(t.apply_F(VertexRef::spine(-1)) == VertexRef::spine(-3));
    CHECK(t.apply_F(t.ref(0)) == VertexRef::spine(-2));
    CHECK(t.apply_F(t.ref(0), 3) == VertexRef::spine(-6));
}

TEST_CASE("constructor rejects bad parameters") {
    CHECK_THROWS_AS(FiniteTree(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(FiniteTree(1, 1), std::invalid_argument);
}

TEST_CASE("add_level builds children with images") {
    const FiniteTree t = small_tree();
    CHECK(t.length() == 1);
    CHECK(t.size() == 3);
    CHECK(t.children(VertexId{0}).size() == 2);
    CHECK(t.vertex(1).image == 0);
    CHECK(t.apply_F(t.ref(1)) == t.ref(0));
    CHECK(check_axioms(t).ok());
}

TEST_CASE("add_level leaves the original untouched") {
    const FiniteTree t(1, 3);
    const FiniteTree u = t.add_level(std::vector<std::vector<ChildSpec>>{{{2, 0}, {1, 0}}});
    CHECK(t.length() == 0);
    CHECK(t.size() == 1);
    CHECK(u.size() == 3);
}

TEST_CASE("add_level rejects axiom violations") {
    const FiniteTree t(1, 3);
    // D2: fibre degrees must sum to deg v.
    CHECK_THROWS_AS((void)t.add_level(std::vector<std::vector<ChildSpec>>{{{1, 0}, {1, 0}}}), AxiomViolation);
    // D1: three critical units exceed deg - 1 = 2.
    CHECK_THROWS_AS((void)t.add_level(std::vector<std::vector<ChildSpec>>{{{3, 0}}}), AxiomViolation);
    // T3: a single child of the root.
    CHECK_THROWS((void)FiniteTree(1, 2).add_level(std::vector<std::vector<ChildSpec>>{{{2, 0}}}));
    // Image must be a child of F(v).
    CHECK_THROWS_AS((void)t.add_level(std::vector<std::vector<ChildSpec>>{{{2, 0}, {1, 5}}}), AxiomViolation);
    // Degree must be positive.
    CHECK_THROWS_AS((void)t.add_level(std::vector<std::vector<ChildSpec>>{{{0, 0}, {3, 0}}}), AxiomViolation);
}

TEST_CASE("from_parts rejects structural damage") {
    std::vector<Vertex> vs{{0, 0, kSpine, 2, kSpine}, {1, 1, 0, 1, 0}, {2, 1, 0, 1, 0}};
    CHECK_NOTHROW((void)FiniteTree::from_parts(1, 2, 1, vs));
    auto bad_parent = vs;
    bad_parent[2].parent = 1;
    CHECK_THROWS_AS((void)FiniteTree::from_parts(1, 2, 1, bad_parent), MalformedTree);
    auto bad_level = vs;
    bad_level[2].level = 3;
    CHECK_THROWS_AS((void)FiniteTree::from_parts(1, 2, 1, bad_level), MalformedTree);
    auto bad_id = vs;
    bad_id[2].id = 7;
    CHECK_THROWS_AS((void)FiniteTree::from_parts(1, 2, 1, bad_id), MalformedTree);
}

TEST_CASE("check_axioms reports each violated axiom") {
    SUBCASE("D2 local cover") {
        std::vector<Vertex> vs{{0, 0, kSpine, 3, kSpine}, {1, 1, 0, 1, 0}, {2, 1, 0, 1, 0}};
        CHECK(has_issue(check_axioms(FiniteTree::from_parts(1, 3, 1, vs)), Axiom::D2LocalCover));
    }
    SUBCASE("D1 monotonicity") {
        std::vector<Vertex> vs{{0, 0, kSpine, 2, kSpine}, {1, 1, 0, 2, 0}, {2, 1, 0, 2, 0}};
        const auto rep = check_axioms(FiniteTree::from_parts(1, 2, 1, vs));
        CHECK(has_issue(rep, Axiom::D1Monotonicity));
    }
    SUBCASE("T3 root") {
        std::vector<Vertex> vs{{0, 0, kSpine, 2, kSpine}, {1, 1, 0, 2, 0}};
        CHECK(has_issue(check_axioms(FiniteTree::from_parts(1, 2, 1, vs)), Axiom::T3Root));
    }
    SUBCASE("T2 childless vertex below the last level") {
        const FiniteTree t = small_tree();
        std::vector<Vertex> vs(t.vertices().begin(), t.vertices().end());
        vs.push_back({3, 2, 1, 2, 1});
        CHECK(has_issue(check_axioms(FiniteTree::from_parts(1, 3, 2, vs)), Axiom::T2Children));
    }
    SUBCASE("children preserving") {
        FiniteTree t = small_tree();
        t = t.add_level(std::vector<std::vector<ChildSpec>>{{{2, 1}, {1, 2}, {1, 2}}, {{1, 1}, {1, 2}}});
        CHECK(check_axioms(t).ok());
        FiniteTree u = t;
        std::vector<std::vector<ChildSpec>> spec;
        for (VertexId id : u.level(2)) {
            std::vector<ChildSpec> list;
            for (const VertexRef& w : u.children(u.apply_F(u.ref(id))))
                for (int k = 0; k < u.vertex(id).degree; ++k) list.push_back({1, w.id});
            spec.push_back(list);
        }
        u = u.add_level(spec);
        CHECK(check_axioms(u).ok());
        std::vector<Vertex> us(u.vertices().begin(), u.vertices().end());
        // Find a level-3 vertex whose image can be moved to a level-2 vertex outside its fibre.
        bool corrupted = false;
        for (auto& v : us) {
            if (v.level != 3) continue;
            const VertexRef parent_img = u.apply_F(u.ref(v.parent));
            for (VertexId cand : u.level(2)) {
                if (u.vertex(cand).parent != parent_img.id) {
                    v.image = cand;
                    corrupted = true;
                    break;
                }
            }
            if (corrupted) break;
        }
        REQUIRE(corrupted);
        CHECK(has_issue(check_axioms(FiniteTree::from_parts(1, 3, 3, us)), Axiom::ChildrenPreserving));
    }
}

TEST_CASE("escape amount and splits") {
    const FiniteTree t = small_tree();
    CHECK(escape_amount(t, 0) == 1);
    CHECK_FALSE(has_split(t, 0));
    CHECK_THROWS_AS((void)escape_amount(t, 1), std::invalid_argument);
    const FiniteTree s = FiniteTree(1, 5).add_level(std::vector<std::vector<ChildSpec>>{{{2, 0}, {2, 0}, {1, 0}}});
    CHECK(escape_amount(s, 0) == 2);
    CHECK(has_split(s, 0));
}

TEST_CASE("critical branch follows the critical chain") {
    const FiniteTree t = small_tree();
    const auto cb = critical_branch(t);
    REQUIRE(cb.branch);
    CHECK(cb.branch->ids == std::vector<VertexId>{0, 1});
    CHECK_FALSE(cb.ambiguous_at);
}

TEST_CASE("critical branch reports ties") {
    FiniteTree t(1, 5);
    t = t.add_level(std::vector<std::vector<ChildSpec>>{{{2, 0}, {2, 0}, {1, 0}}});
    const auto cb = critical_branch(t);
    CHECK(cb.ambiguous_at.has_value());
}

TEST_CASE("random trees satisfy every axiom") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int H = 1 + trial % 3;
        const FiniteTree t = oracle::random_tree(rng, H, 2 + trial % 3, 4);
        const auto rep = check_axioms(t);
        CHECK_MESSAGE(rep.ok(), "trial " << trial);
        for (const Vertex& v : t.vertices()) {
            if (v.parent != kSpine) CHECK(t.vertex(v.parent).level == v.level - 1);
            CHECK(t.apply_F(t.ref(v.id)).level == v.level - H);
        }
    }
}
