#include "yoccoz/return_maps.hpp"

#include <algorithm>
#include <numeric>

namespace yoccoz {

VertexSet VertexSet::of(const FiniteTree& tree, std::span<const VertexId> ids) {
    VertexSet s(tree);
    for (VertexId id : ids) s.insert(id);
    return s;
}

VertexSet VertexSet::of(const FiniteTree& tree, const Branch& branch) { return of(tree, branch.ids); }

VertexSet VertexSet::critical(const FiniteTree& tree) {
    VertexSet s(tree);
    for (const Vertex& v : tree.vertices())
        if (v.degree > 1) s.insert(v.id);
    return s;
}

bool is_ancestral(const FiniteTree& tree, const VertexSet& X) {
    if (X.capacity() != tree.size()) throw std::invalid_argument("vertex set belongs to a different tree");
    for (const Vertex& v : tree.vertices()) {
        if (v.parent == kSpine || !X.contains(v.id)) continue;
        if (!X.contains(v.parent)) return false;
    }
    return true;
}

ReturnMap::ReturnMap(const FiniteTree& tree, VertexSet X) : tree_(&tree), X_(std::move(X)) {
    if (!is_ancestral(tree, X_)) throw NotAncestral();
    // Images live H levels further up, so processing by level makes every lookup resolved.
    n1_.assign(tree.size(), 0);
    for (int l = 0; l <= tree.length(); ++l) {
        for (VertexId id : tree.level(l)) {
            const VertexRef img = tree.apply_F(tree.ref(id));
            n1_[id] = X_.contains(img) ? 1 : 1 + n1_[img.id];
        }
    }
}

int ReturnMap::first_return_time(VertexRef v) const { return v.is_spine() ? 1 : n1_.at(v.id); }

Return ReturnMap::first_return(VertexRef v) const {
    const int n = first_return_time(v);
    return {n, tree_->apply_F(v, n)};
}

Return ReturnMap::nth_return(VertexRef v, int R) const {
    if (R < 1) throw std::invalid_argument("return index must be at least 1");
    Return acc{0, v};
    for (int r = 0; r < R; ++r) {
        const Return step = first_return(acc.target);
        acc.time += step.time;
        acc.target = step.target;
    }
    return acc;
}

ReturnRecord ReturnMap::returns(VertexRef v, int R) const {
    if (R < 1) throw std::invalid_argument("return index must be at least 1");
    ReturnRecord rec;
    Return acc{0, v};
    for (int r = 0; r < R; ++r) {
        const Return step = first_return(acc.target);
        acc.time += step.time;
        acc.target = step.target;
        rec.times.push_back(acc.time);
        rec.targets.push_back(acc.target);
    }
    return rec;
}

}  // namespace yoccoz
