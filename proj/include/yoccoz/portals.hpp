#pragma once

#include <optional>
#include <string>
#include <vector>

#include "yoccoz/return_maps.hpp"

namespace yoccoz {

enum class PortalType { I, II, III };

[[nodiscard]] const char* to_string(PortalType t);

struct PortalInfo {
    VertexRef vertex;
    /// First matching type in the order I, II, III.
    PortalType type = PortalType::III;
    bool type_I = false;
    bool type_II = false;
    bool type_III = false;
    /// Children outside X whose first return time equals that of the portal.
    std::vector<VertexRef> witnesses;

    [[nodiscard]] bool simple() const { return witnesses.size() == 1; }
};

/// Witness children of x (children outside X with N^1 equal to N^1(x)). Empty unless x is
/// an X-portal. x must lie below the last level.
[[nodiscard]] std::vector<VertexRef> portal_witnesses(const ReturnMap& rm, VertexRef x);

/// Classification of one vertex, or nothing when it is not an X-portal.
[[nodiscard]] std::optional<PortalInfo> classify_portal(const ReturnMap& rm, VertexRef x);

/// Every X-portal among the explicit vertices at levels <= L-1, in id order.
[[nodiscard]] std::vector<PortalInfo> portals(const ReturnMap& rm);

struct MainLemmaViolation {
    VertexId vertex;
    VertexId child;
    std::string reason;
};

/// Checks the pass-through-a-portal property for every vertex below the last level and
/// every child whose first return comes later than the parent's, including the variant
/// for higher returns of the child. Returns the violations found.
[[nodiscard]] std::vector<MainLemmaViolation> verify_main_lemma(const ReturnMap& rm);

/// N^1(c_l) < N^1(c_{l+1}) and deg c_l == deg c_{l+1}, with returns taken to the branch.
[[nodiscard]] bool type1_branch_criterion(const ReturnMap& branch_returns, const Branch& branch, int l);

struct TypeIICondition {
    bool critical_hit = false;       // some F^n(x), 1 <= n < N^1(x), is critical with a same-time child
    bool two_children_in_X = false;  // Ret(x) has two distinct children in X
    [[nodiscard]] bool holds() const { return critical_hit || two_children_in_X; }
};

/// The two necessary conditions satisfied by every type II portal.
[[nodiscard]] TypeIICondition type2_necessary_condition(const ReturnMap& rm, VertexRef x);

}  // namespace yoccoz
