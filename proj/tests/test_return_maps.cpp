#include "doctest.h"
#include "oracles.hpp"
#include "yoccoz/return_maps.hpp"

using namespace yoccoz;

TEST_CASE("first return times agree with the brute-force walk") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int H = 1 + trial % 2;
        const FiniteTree t = oracle::random_tree(rng, H, 2 + trial % 3, 5);
        const ReturnMap crit(t, VertexSet::critical(t));
        const auto Xc = oracle::critical_set(t);
        for (const Vertex& v : t.vertices())
            CHECK(crit.first_return_time(v.id) == oracle::first_return(t, Xc, oracle::node(t, v.id)));

        const auto cb = critical_branch(t);
        if (!cb.branch) continue;
        const ReturnMap br(t, VertexSet::of(t, *cb.branch));
        const auto Xb = oracle::branch_set(t, cb.branch->ids);
        for (const Vertex& v : t.vertices())
            CHECK(br.first_return_time(v.id) == oracle::first_return(t, Xb, oracle::node(t, v.id)));
    }
}

TEST_CASE("return map requires an ancestral set") {
    FiniteTree t(1, 3);
    t = t.add_level(std::vector<std::vector<ChildSpec>>{{{2, 0}, {1, 0}}});
    VertexSet X(t);
    X.insert(1);
    CHECK_FALSE(is_ancestral(t, X));
    CHECK_THROWS_AS(ReturnMap(t, X), NotAncestral);
    X.insert(0);
    CHECK(is_ancestral(t, X));
}

TEST_CASE("vertices within H levels of the root return at once") {
    std::mt19937 rng(3);
    const FiniteTree t = oracle::random_tree(rng, 3, 3, 5);
    const ReturnMap rm(t, VertexSet::of(t, std::vector<VertexId>{0}));
    for (const Vertex& v : t.vertices())
        if (v.level < 3) CHECK(rm.first_return_time(v.id) == 1);
    CHECK(rm.first_return_time(VertexRef::spine(-2)) == 1);
}

TEST_CASE("higher returns accumulate first returns") {
    std::mt19937 rng(5);
    const FiniteTree t = oracle::random_tree(rng, 1, 3, 6);
    const ReturnMap rm(t, VertexSet::critical(t));
    const auto X = oracle::critical_set(t);
    for (const Vertex& v : t.vertices()) {
        const VertexRef r = t.ref(v.id);
        const auto rec = rm.returns(r, 3);
        const auto times = oracle::return_times(t, X, oracle::node(t, v.id), rec.times.back());
        REQUIRE(times.size() == 3);
        for (int i = 0; i < 3; ++i) {
            CHECK(rec.times[i] == times[i]);
            CHECK(rm.nth_return(r, i + 1).time == times[i]);
            CHECK(rec.targets[i] == t.apply_F(r, times[i]));
        }
    }
    CHECK_THROWS_AS((void)rm.nth_return(t.ref(0), 0), std::invalid_argument);
}
