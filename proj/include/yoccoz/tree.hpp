#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace yoccoz {

using VertexId = std::int32_t;

/// Marker id for the virtual spine vertices v_{-1}, v_{-2}, ...
inline constexpr VertexId kSpine = -1;

/// A vertex of a tree with dynamics, or a vertex of the virtual spine above the root.
///
/// Spine vertices have negative level and id == kSpine. The root v_0 is the explicit
/// vertex with id 0 at level 0.
struct VertexRef {
    int level = 0;
    VertexId id = 0;

    [[nodiscard]] bool is_spine() const { return id == kSpine; }

    static VertexRef spine(int level) { return {level, kSpine}; }

    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

struct Vertex {
    VertexId id = 0;
    int level = 0;
    /// kSpine for the root.
    VertexId parent = kSpine;
    int degree = 1;
    /// Explicit vertex at level - H, or kSpine when level - H < 0. When level - H == 0 the
    /// image is the root (id 0).
    VertexId image = kSpine;
};

/// Raised when a tree description is structurally unusable (dangling ids, wrong levels).
class MalformedTree : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by add_level when the requested children violate the degree axioms.
class AxiomViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One requested child in an add_level call.
struct ChildSpec {
    int degree = 1;
    /// Child of the parent's image the new vertex maps to: an explicit vertex id, or
    /// kSpine when the new level minus H is negative.
    VertexId image = kSpine;
};

/// A finite-length tree with dynamics.
///
/// Levels 0..L are stored explicitly; the spine above the root is implicit and every
/// spine vertex has degree D0. Trees are immutable values: add_level returns a new tree
/// and leaves the original untouched. Vertex ids are dense and assigned in creation
/// order, which for trees built level by level is also level order.
class FiniteTree {
public:
    /// Tree of length 0 holding only the root.
    FiniteTree(int H, int root_degree);

    /// Builds a tree from an explicit vertex list without checking the degree axioms.
    /// Structural consistency (dense ids, parents one level up, images H levels down,
    /// a unique root) is required; violations raise MalformedTree.
    static FiniteTree from_parts(int H, int root_degree, int length, std::vector<Vertex> vertices);

    [[nodiscard]] int H() const { return H_; }
    [[nodiscard]] int root_degree() const { return root_degree_; }
    [[nodiscard]] int length() const { return length_; }
    [[nodiscard]] std::size_t size() const { return vertices_->size(); }

    [[nodiscard]] const Vertex& vertex(VertexId id) const;
    [[nodiscard]] std::span<const Vertex> vertices() const { return *vertices_; }
    [[nodiscard]] std::span<const VertexId> children(VertexId id) const;
    [[nodiscard]] std::span<const VertexId> level(int l) const;

    [[nodiscard]] VertexRef ref(VertexId id) const { return {vertex(id).level, id}; }
    [[nodiscard]] int degree(VertexRef v) const;
    [[nodiscard]] std::optional<VertexRef> parent(VertexRef v) const;
    /// Children of any vertex including spine vertices (whose only child is one level down).
    [[nodiscard]] std::vector<VertexRef> children(VertexRef v) const;
    [[nodiscard]] bool has_children(VertexRef v) const { return v.level < length_; }

    /// F^n(v). Spine vertices move down the spine by H per step.
    [[nodiscard]] VertexRef apply_F(VertexRef v, int n = 1) const;

    /// Appends level L+1. `spec[i]` lists the children of the i-th vertex of level L (in
    /// id order). Returns the extended tree and writes the ids of the new vertices, in the
    /// order requested, to `new_ids` when given.
    [[nodiscard]] FiniteTree add_level(std::span<const std::vector<ChildSpec>> spec,
                                       std::vector<std::vector<VertexId>>* new_ids = nullptr) const;

    /// The vertex at level `level` that serves as the spine target at that level: the
    /// root for level 0, the spine marker otherwise. Only meaningful for level <= 0.
    static VertexRef top(int level) { return level == 0 ? VertexRef{0, 0} : VertexRef::spine(level); }

private:
    struct Index {
        std::vector<std::vector<VertexId>> children;
        std::vector<std::vector<VertexId>> levels;
    };

    FiniteTree() = default;
    void rebuild_index();

    int H_ = 1;
    int root_degree_ = 2;
    int length_ = 0;
    std::shared_ptr<const std::vector<Vertex>> vertices_;
    std::shared_ptr<const Index> index_;
};

/// A parent-to-child path starting at the root: ids[l] is at level l.
struct Branch {
    std::vector<VertexId> ids;

    [[nodiscard]] int length() const { return static_cast<int>(ids.size()) - 1; }
    [[nodiscard]] bool contains(const FiniteTree& tree, VertexRef v) const;
    /// Vertex at level l; spine levels (l < 0) map to the spine.
    [[nodiscard]] VertexRef at(int l) const { return l < 0 ? VertexRef::spine(l) : VertexRef{l, ids.at(l)}; }
};

enum class Axiom {
    Degree,              // deg v >= 1
    T2Children,          // vertex below level L without children
    T3Root,              // root with fewer than two children once level 1 exists
    ChildrenPreserving,  // F(child of v) is not a child of F(v)
    D1Monotonicity,
    D2LocalCover,
};

[[nodiscard]] const char* to_string(Axiom a);

struct AxiomIssue {
    Axiom axiom;
    VertexId vertex;
    std::string detail;
};

struct ValidationReport {
    std::vector<AxiomIssue> issues;
    [[nodiscard]] bool ok() const { return issues.empty(); }
};

/// Reports every violated tree or degree axiom. D2 is checked on levels <= L-1 only.
[[nodiscard]] ValidationReport check_axioms(const FiniteTree& tree);

/// (deg v - 1) - sum over children (deg c - 1). Throws std::invalid_argument for leaves.
[[nodiscard]] int escape_amount(const FiniteTree& tree, VertexId v);
/// True if v has at least two critical children. Throws std::invalid_argument for leaves.
[[nodiscard]] bool has_split(const FiniteTree& tree, VertexId v);

struct CriticalBranchResult {
    std::optional<Branch> branch;
    /// Set when two critical chains both reach the deepest critical level.
    std::optional<VertexId> ambiguous_at;
};

/// Follows critical vertices down from the root, choosing at a split the child whose
/// critical chain reaches deepest. Ambiguity is reported when the choice is not unique.
[[nodiscard]] CriticalBranchResult critical_branch(const FiniteTree& tree);

}  // namespace yoccoz
