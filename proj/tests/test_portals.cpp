#include "doctest.h"
#include "oracles.hpp"
#include "yoccoz/portals.hpp"
#include "yoccoz/realization.hpp"

using namespace yoccoz;

namespace {

Realization realized(const TauFunction& tf, int D = 2) { return realize(tf, default_admissible(tf, D)); }

}  // namespace

TEST_CASE("branch portals of the length-6 example") {
    const TauFunction tf(1, {0}, {1, 2, 1, 2, 1, 1});
    const Realization r = realized(tf);
    const ReturnMap rm(r.tree, VertexSet::of(r.tree, r.branch));
    std::set<int> levels;
    for (const PortalInfo& p : portals(rm)) {
        CHECK(r.branch.contains(r.tree, p.vertex));
        levels.insert(p.vertex.level);
    }
    // Points of E and tau-portals are where the branch opens.
    CHECK(levels.contains(0));
    CHECK(levels.contains(1));
    CHECK(levels.contains(3));

    const auto c0 = classify_portal(rm, r.branch.at(0));
    REQUIRE(c0);
    CHECK(c0->type == PortalType::III);
    CHECK(c0->type_III);
}

TEST_CASE("off-set vertices are never portals") {
    const TauFunction tf(1, {0}, {1, 2, 1});
    const Realization r = realized(tf);
    const ReturnMap rm(r.tree, VertexSet::of(r.tree, r.branch));
    for (const Vertex& v : r.tree.vertices()) {
        if (v.level >= r.tree.length() || rm.set().contains(v.id)) continue;
        CHECK_FALSE(classify_portal(rm, r.tree.ref(v.id)));
    }
    CHECK_THROWS_AS((void)portal_witnesses(rm, r.branch.at(3)), std::invalid_argument);
}

TEST_CASE("portal multiplicity follows the witness count") {
    // R=(1,2,1,3): escape 2 at c_0 gives it two same-time children off the branch.
    const TauFunction tf(1, {0}, {1, 2, 1, 3});
    REQUIRE(esc(tf, 0) == 2);
    const Realization r = realized(tf);
    const ReturnMap rm(r.tree, VertexSet::of(r.tree, r.branch));
    const auto c0 = classify_portal(rm, r.branch.at(0));
    REQUIRE(c0);
    CHECK(c0->witnesses.size() >= 2);
    CHECK_FALSE(c0->simple());
}

TEST_CASE("portal passage holds on realized and random trees") {
    for (const auto& R : std::vector<std::vector<int>>{{1, 2, 1, 2, 1, 1}, {1, 2, 1, 3}, {1, 1, 1, 1}, {1, 2, 2}}) {
        const TauFunction tf(1, {0}, R);
        const Realization r = realized(tf);
        CHECK(verify_main_lemma(ReturnMap(r.tree, VertexSet::of(r.tree, r.branch))).empty());
        CHECK(verify_main_lemma(ReturnMap(r.tree, VertexSet::critical(r.tree))).empty());
    }
    std::mt19937 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const FiniteTree t = oracle::random_tree(rng, 1 + trial % 2, 3, 5);
        const auto v = verify_main_lemma(ReturnMap(t, VertexSet::critical(t)));
        CHECK_MESSAGE(v.empty(), "trial " << trial << ": " << (v.empty() ? "" : v.front().reason));
    }
}

TEST_CASE("type II portals meet one of the two necessary conditions") {
    std::mt19937 rng(17);
    int seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const FiniteTree t = oracle::random_tree(rng, 1 + trial % 2, 3 + trial % 2, 5, 0.5);
        const ReturnMap rm(t, VertexSet::critical(t));
        for (const PortalInfo& p : portals(rm)) {
            if (!p.type_II) continue;
            ++seen;
            CHECK(type2_necessary_condition(rm, p.vertex).holds());
        }
    }
    MESSAGE("type II portals checked: " << seen);
    CHECK(seen > 0);
}

TEST_CASE("type I criterion along a bi-critical branch") {
    const TauFunction tf(1, {0}, {1, 2, 1, 2, 1, 1});
    const Realization r = realized(tf);
    const ReturnMap rm(r.tree, VertexSet::of(r.tree, r.branch));
    for (int l = 2; l < r.tree.length(); ++l) {
        const auto p = classify_portal(rm, r.branch.at(l));
        CHECK((p && p->type_I) == type1_branch_criterion(rm, r.branch, l));
    }
    CHECK_THROWS_AS((void)type1_branch_criterion(rm, r.branch, r.tree.length()), std::out_of_range);
}

TEST_CASE("rewired images trip the portal passage check") {
    const TauFunction tf(1, {0}, {1, 2, 1, 2});
    const Realization r = realized(tf);
    const FiniteTree& t = r.tree;
    int flagged = 0;
    int portal_missing = 0;
    for (const Vertex& v : t.vertices()) {
        if (v.level < 2) continue;
        for (const VertexRef& w : t.children(t.apply_F(t.ref(v.parent)))) {
            if (w.id == v.image) continue;
            std::vector<Vertex> vs(t.vertices().begin(), t.vertices().end());
            vs[v.id].image = w.id;
            const FiniteTree u = FiniteTree::from_parts(1, t.root_degree(), t.length(), vs);
            const auto viol = verify_main_lemma(ReturnMap(u, VertexSet::of(u, r.branch)));
            if (viol.empty()) continue;
            ++flagged;
            for (const auto& x : viol)
                if (x.reason.find("not a portal") != std::string::npos) ++portal_missing;
            CHECK_FALSE(check_axioms(u).ok());
        }
    }
    CHECK(flagged > 0);
    CHECK(portal_missing > 0);
}
