#include "yoccoz/tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace yoccoz {

FiniteTree::FiniteTree(int H, int root_degree) : H_(H), root_degree_(root_degree), length_(0) {
    if (H < 1) throw std::invalid_argument("H must be at least 1");
    if (root_degree < 2) throw std::invalid_argument("root degree must be at least 2");
    auto verts = std::make_shared<std::vector<Vertex>>();
    verts->push_back(Vertex{0, 0, kSpine, root_degree, kSpine});
    vertices_ = std::move(verts);
    rebuild_index();
}

FiniteTree FiniteTree::from_parts(int H, int root_degree, int length, std::vector<Vertex> vertices) {
    if (H < 1) throw MalformedTree("H must be at least 1");
    if (root_degree < 2) throw MalformedTree("D0 must be at least 2");
    if (length < 0) throw MalformedTree("length must be non-negative");
    if (vertices.empty()) throw MalformedTree("tree has no vertices");

    const auto n = static_cast<VertexId>(vertices.size());
    for (VertexId i = 0; i < n; ++i) {
        const Vertex& v = vertices[i];
        std::ostringstream where;
        where << "vertex " << i << ": ";
        if (v.id != i) throw MalformedTree(where.str() + "ids must be dense and listed in order");
        if (v.level < 0 || v.level > length) throw MalformedTree(where.str() + "level out of range");
        if (v.level == 0) {
            if (i != 0) throw MalformedTree(where.str() + "only the root (id 0) may sit at level 0");
            if (v.parent != kSpine) throw MalformedTree(where.str() + "root must not have a parent");
        } else {
            if (v.parent < 0 || v.parent >= n) throw MalformedTree(where.str() + "dangling parent");
            if (vertices[v.parent].level != v.level - 1)
                throw MalformedTree(where.str() + "parent is not one level up");
        }
        const int image_level = v.level - H;
        if (image_level < 0) {
            if (v.image != kSpine) throw MalformedTree(where.str() + "image must be the spine");
        } else {
            if (v.image < 0 || v.image >= n) throw MalformedTree(where.str() + "dangling image");
            if (vertices[v.image].level != image_level)
                throw MalformedTree(where.str() + "image is not H levels down");
        }
    }
    if (vertices[0].level != 0) throw MalformedTree("vertex 0 must be the root");

    FiniteTree t;
    t.H_ = H;
    t.root_degree_ = root_degree;
    t.length_ = length;
    t.vertices_ = std::make_shared<const std::vector<Vertex>>(std::move(vertices));
    t.rebuild_index();
    return t;
}

void FiniteTree::rebuild_index() {
    auto idx = std::make_shared<Index>();
    idx->children.resize(vertices_->size());
    idx->levels.resize(static_cast<std::size_t>(length_) + 1);
    for (const Vertex& v : *vertices_) {
        if (v.parent != kSpine) idx->children[v.parent].push_back(v.id);
        idx->levels[v.level].push_back(v.id);
    }
    index_ = std::move(idx);
}

const Vertex& FiniteTree::vertex(VertexId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= vertices_->size())
        throw std::out_of_range("no vertex with id " + std::to_string(id));
    return (*vertices_)[id];
}

std::span<const VertexId> FiniteTree::children(VertexId id) const {
    (void)vertex(id);
    return index_->children[id];
}

std::span<const VertexId> FiniteTree::level(int l) const {
    if (l < 0 || l > length_) throw std::out_of_range("level out of range");
    return index_->levels[l];
}

int FiniteTree::degree(VertexRef v) const { return v.is_spine() ? root_degree_ : vertex(v.id).degree; }

std::optional<VertexRef> FiniteTree::parent(VertexRef v) const {
    if (v.is_spine() || v.level == 0) return top(v.level - 1);
    const Vertex& x = vertex(v.id);
    return VertexRef{x.level - 1, x.parent};
}

std::vector<VertexRef> FiniteTree::children(VertexRef v) const {
    if (v.is_spine()) return {top(v.level + 1)};
    std::vector<VertexRef> out;
    for (VertexId c : children(v.id)) out.push_back({v.level + 1, c});
    return out;
}

VertexRef FiniteTree::apply_F(VertexRef v, int n) const {
    if (n < 0) throw std::invalid_argument("iterate count must be non-negative");
    for (; n > 0; --n) {
        if (v.is_spine()) {
            // The spine stays on the spine; jump straight to the final level.
            return VertexRef::spine(v.level - n * H_);
        }
        const Vertex& x = vertex(v.id);
        const int target = x.level - H_;
        v = target < 0 ? VertexRef::spine(target) : VertexRef{target, x.image};
    }
    return v;
}

FiniteTree FiniteTree::add_level(std::span<const std::vector<ChildSpec>> spec,
                                 std::vector<std::vector<VertexId>>* new_ids) const {
    const auto leaves = level(length_);
    if (spec.size() != leaves.size())
        throw std::invalid_argument("children spec must list every vertex of the last level");

    const int new_level = length_ + 1;
    const int image_level = new_level - H_;
    auto verts = std::make_shared<std::vector<Vertex>>(*vertices_);
    VertexId next = static_cast<VertexId>(verts->size());
    if (new_ids) new_ids->assign(leaves.size(), {});

    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const VertexRef v = ref(leaves[i]);
        const VertexRef fv = apply_F(v);
        const auto allowed = children(fv);
        const int dv = degree(v);

        // Degree-weighted fibre over each child of F(v).
        std::map<VertexId, int> fibre;
        for (const VertexRef& w : allowed) fibre[w.id] = 0;
        int critical_excess = 0;
        for (const ChildSpec& c : spec[i]) {
            if (c.degree < 1)
                throw AxiomViolation("vertex " + std::to_string(v.id) + ": child degree must be positive");
            const VertexId img = image_level == 0 ? (c.image == kSpine ? 0 : c.image) : c.image;
            auto it = fibre.find(img);
            if (it == fibre.end())
                throw AxiomViolation("vertex " + std::to_string(v.id) + ": image " + std::to_string(c.image) +
                                     " is not a child of F(v)");
            it->second += c.degree;
            critical_excess += c.degree - 1;
        }
        if (spec[i].empty())
            throw AxiomViolation("vertex " + std::to_string(v.id) + ": every vertex below the last level needs a child");
        if (critical_excess > dv - 1)
            throw AxiomViolation("D1 violated at vertex " + std::to_string(v.id) + ": children carry " +
                                 std::to_string(critical_excess) + " > deg - 1 = " + std::to_string(dv - 1));
        for (const auto& [w, total] : fibre) {
            if (total != dv)
                throw AxiomViolation("D2 violated at vertex " + std::to_string(v.id) + ": fibre over " +
                                     std::to_string(w) + " has degree " + std::to_string(total) + ", expected " +
                                     std::to_string(dv));
        }
        for (const ChildSpec& c : spec[i]) {
            const VertexId img = image_level < 0 ? kSpine : (image_level == 0 ? 0 : c.image);
            verts->push_back(Vertex{next, new_level, v.id, c.degree, img});
            if (new_ids) (*new_ids)[i].push_back(next);
            ++next;
        }
    }
    if (length_ == 0 && spec[0].size() < 2)
        throw AxiomViolation("T3 violated: the root needs at least two children");

    FiniteTree t;
    t.H_ = H_;
    t.root_degree_ = root_degree_;
    t.length_ = new_level;
    t.vertices_ = std::move(verts);
    t.rebuild_index();
    return t;
}

bool Branch::contains(const FiniteTree& tree, VertexRef v) const {
    (void)tree;
    if (v.level < 0) return true;
    if (v.level >= static_cast<int>(ids.size())) return false;
    return ids[v.level] == v.id;
}

const char* to_string(Axiom a) {
    switch (a) {
        case Axiom::Degree: return "degree";
        case Axiom::T2Children: return "T2";
        case Axiom::T3Root: return "T3";
        case Axiom::ChildrenPreserving: return "children-preserving";
        case Axiom::D1Monotonicity: return "D1";
        case Axiom::D2LocalCover: return "D2";
    }
    return "?";
}

ValidationReport check_axioms(const FiniteTree& tree) {
    ValidationReport report;
    auto add = [&](Axiom a, VertexId v, std::string detail) {
        report.issues.push_back({a, v, std::move(detail)});
    };

    for (const Vertex& v : tree.vertices()) {
        if (v.degree < 1) add(Axiom::Degree, v.id, "degree " + std::to_string(v.degree));
    }
    if (tree.length() >= 1 && tree.children(VertexId{0}).size() < 2)
        add(Axiom::T3Root, 0, "root has fewer than two children");

    for (const Vertex& v : tree.vertices()) {
        const VertexRef vr{v.level, v.id};
        if (v.level >= 1) {
            // F(child of p) must be a child of F(p).
            const VertexRef fp = tree.apply_F(*tree.parent(vr));
            const VertexRef fv = tree.apply_F(vr);
            const auto kids = tree.children(fp);
            if (std::find(kids.begin(), kids.end(), fv) == kids.end())
                add(Axiom::ChildrenPreserving, v.id, "image is not a child of the parent's image");
        }
        if (v.level >= tree.length()) continue;

        const auto kids = tree.children(v.id);
        if (kids.empty()) {
            add(Axiom::T2Children, v.id, "no children below the last level");
            continue;
        }
        int excess = 0;
        for (VertexId c : kids) excess += tree.vertex(c).degree - 1;
        if (excess > v.degree - 1)
            add(Axiom::D1Monotonicity, v.id,
                "children carry " + std::to_string(excess) + " > deg - 1 = " + std::to_string(v.degree - 1));

        std::map<VertexId, int> fibre;
        for (const VertexRef& w : tree.children(tree.apply_F(vr))) fibre[w.id] = 0;
        for (VertexId c : kids) {
            const VertexRef fc = tree.apply_F(tree.ref(c));
            auto it = fibre.find(fc.id);
            if (it != fibre.end()) it->second += tree.vertex(c).degree;
        }
        for (const auto& [w, total] : fibre) {
            if (total != v.degree)
                add(Axiom::D2LocalCover, v.id,
                    "fibre over " + std::to_string(w) + " has degree " + std::to_string(total) + ", expected " +
                        std::to_string(v.degree));
        }
    }
    return report;
}

int escape_amount(const FiniteTree& tree, VertexId v) {
    const auto kids = tree.children(v);
    if (kids.empty()) throw std::invalid_argument("escape is undefined at a leaf");
    int excess = 0;
    for (VertexId c : kids) excess += tree.vertex(c).degree - 1;
    return tree.vertex(v).degree - 1 - excess;
}

bool has_split(const FiniteTree& tree, VertexId v) {
    const auto kids = tree.children(v);
    if (kids.empty()) throw std::invalid_argument("split is undefined at a leaf");
    return std::count_if(kids.begin(), kids.end(), [&](VertexId c) { return tree.vertex(c).degree > 1; }) >= 2;
}

CriticalBranchResult critical_branch(const FiniteTree& tree) {
    // Deepest level reachable from each critical vertex through critical vertices.
    std::vector<int> reach(tree.size(), -1);
    for (int l = tree.length(); l >= 0; --l) {
        for (VertexId v : tree.level(l)) {
            if (tree.vertex(v).degree <= 1) continue;
            reach[v] = l;
            for (VertexId c : tree.children(v)) reach[v] = std::max(reach[v], reach[c]);
        }
    }

    CriticalBranchResult out;
    if (tree.vertex(0).degree <= 1) return out;
    Branch b{{0}};
    VertexId cur = 0;
    while (true) {
        VertexId best = kSpine;
        int best_reach = -1;
        int ties = 0;
        for (VertexId c : tree.children(cur)) {
            if (reach[c] < 0) continue;
            if (reach[c] > best_reach) {
                best = c;
                best_reach = reach[c];
                ties = 1;
            } else if (reach[c] == best_reach) {
                ++ties;
            }
        }
        if (best == kSpine) break;
        if (ties > 1) {
            out.ambiguous_at = cur;
            return out;
        }
        b.ids.push_back(best);
        cur = best;
    }
    out.branch = std::move(b);
    return out;
}

}  // namespace yoccoz
