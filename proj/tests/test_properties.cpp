#include "doctest.h"
#include "properties.hpp"
#include "yoccoz/realization.hpp"

using namespace yoccoz;

namespace {

void require_clean(const props::SuiteResult& r) {
    CHECK_MESSAGE(r.cover.violations == 0, r.cover.first);
    CHECK_MESSAGE(r.additivity.violations == 0, r.additivity.first);
    CHECK_MESSAGE(r.containment.violations == 0, r.containment.first);
    CHECK_MESSAGE(r.monotone.violations == 0, r.monotone.first);
    CHECK_MESSAGE(r.two_children.violations == 0, r.two_children.first);
}

}  // namespace

TEST_CASE("oracle suite on realized trees") {
    for (int H = 1; H <= 2; ++H)
        for (int L = 1; L <= 5; ++L)
            enumerate(H, {0}, L, [&](const TauFunction& tf) {
                const Realization r = realize(tf, default_admissible(tf, 2));
                require_clean(props::run_suite(r.tree, &r.branch.ids));
            });
}

TEST_CASE("oracle suite on random trees") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const FiniteTree t = oracle::random_tree(rng, 1 + trial % 3, 2 + trial % 3, 1 + trial % 5);
        REQUIRE(check_axioms(t).ok());
        const auto cb = critical_branch(t);
        require_clean(props::run_suite(t, cb.branch && !cb.ambiguous_at ? &cb.branch->ids : nullptr));
    }
}

TEST_CASE("cover check catches a broken fibre") {
    const TauFunction tf(1, {0}, {1, 2, 1});
    const Realization r = realize(tf, default_admissible(tf, 2));
    const FiniteTree& t = r.tree;
    std::vector<Vertex> vs(t.vertices().begin(), t.vertices().end());
    for (Vertex& v : vs) {
        if (v.level != t.length()) continue;
        const auto siblings = t.children(t.apply_F(t.ref(v.parent)));
        if (siblings.size() < 2) continue;
        v.image = siblings[0].id == v.image ? siblings[1].id : siblings[0].id;
        break;
    }
    const FiniteTree bad = FiniteTree::from_parts(1, t.root_degree(), t.length(), vs);
    const props::Kids kids(bad);
    CHECK(props::d_fold_cover(bad, kids).violations > 0);
}

TEST_CASE("brute-force return walk sees a misplaced set") {
    // Level 1 without the root is not ancestral: level-2 vertices return at once, their
    // parents only on reaching the spine.
    const TauFunction tf(1, {0}, {1, 2, 1});
    const Realization r = realize(tf, default_admissible(tf, 2));
    std::vector<bool> X(r.tree.size(), false);
    for (VertexId id : r.tree.level(1)) X[id] = true;
    CHECK(props::descendant_returns(r.tree, X).violations + props::first_return_monotone(r.tree, X).violations > 0);
}
