#pragma once

#include <vector>

#include "yoccoz/tree.hpp"

namespace yoccoz {

/// A set of explicit vertices (levels >= 0) plus, implicitly, the whole virtual spine.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(const FiniteTree& tree) : member_(tree.size(), false) {}

    static VertexSet of(const FiniteTree& tree, std::span<const VertexId> ids);
    static VertexSet of(const FiniteTree& tree, const Branch& branch);
    /// All vertices of degree > 1.
    static VertexSet critical(const FiniteTree& tree);

    void insert(VertexId id) { member_.at(id) = true; }
    [[nodiscard]] bool contains(VertexRef v) const { return v.is_spine() || member_.at(v.id); }
    [[nodiscard]] bool contains(VertexId id) const { return member_.at(id); }
    [[nodiscard]] std::size_t capacity() const { return member_.size(); }

private:
    std::vector<bool> member_;
};

/// True iff the explicit part of X is closed under taking parents.
[[nodiscard]] bool is_ancestral(const FiniteTree& tree, const VertexSet& X);

class NotAncestral : public std::invalid_argument {
public:
    NotAncestral() : std::invalid_argument("return maps need an ancestral target set") {}
};

struct Return {
    int time = 0;
    VertexRef target;

    friend bool operator==(const Return&, const Return&) = default;
};

struct ReturnRecord {
    std::vector<int> times;
    std::vector<VertexRef> targets;
};

/// First-return map to an ancestral set X. First return times of explicit vertices are
/// memoized on construction; the object is tied to one (tree, X) pair and is read-only
/// afterwards, so concurrent queries are safe.
class ReturnMap {
public:
    ReturnMap(const FiniteTree& tree, VertexSet X);

    [[nodiscard]] const FiniteTree& tree() const { return *tree_; }
    [[nodiscard]] const VertexSet& set() const { return X_; }

    [[nodiscard]] int first_return_time(VertexRef v) const;
    [[nodiscard]] int first_return_time(VertexId v) const { return n1_.at(v); }
    [[nodiscard]] Return first_return(VertexRef v) const;

    /// N^R(v) and Ret^R(v) for R >= 1.
    [[nodiscard]] Return nth_return(VertexRef v, int R) const;
    [[nodiscard]] ReturnRecord returns(VertexRef v, int R) const;

private:
    const FiniteTree* tree_;
    VertexSet X_;
    std::vector<int> n1_;
};

}  // namespace yoccoz
