#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "yoccoz/portals.hpp"
#include "yoccoz/realization.hpp"
#include "yoccoz/tau.hpp"
#include "yoccoz/tree.hpp"

namespace yoccoz {

using Json = nlohmann::ordered_json;

/// Input that parses but does not describe a tree or tau function.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"H", "D0", "L", "vertices": [{"id", "level", "parent", "deg", "image"}]}. Parent is
/// null for the root; image is "spine" whenever level - H <= 0.
[[nodiscard]] Json tree_to_json(const FiniteTree& tree);
/// Accepts "spine" or 0 as the image at level H. Throws InputError or MalformedTree.
[[nodiscard]] FiniteTree tree_from_json(const Json& j);

/// {"H", "E", "R"}.
[[nodiscard]] Json tau_to_json(const TauFunction& tf);
[[nodiscard]] TauFunction tau_from_json(const Json& j);

[[nodiscard]] Json to_json(const TauReport& rep);
[[nodiscard]] Json to_json(const ValidationReport& rep);
[[nodiscard]] Json to_json(const PortalInfo& p);
[[nodiscard]] Json to_json(const RealizationError& e);

/// Parses text, mapping syntax errors to InputError.
[[nodiscard]] Json parse_json(const std::string& text);

/// Graphviz digraph: parent-to-child edges solid, and with `dynamics` the one-step map as
/// dashed edges. The spine down to level -H is drawn so that every image exists.
[[nodiscard]] std::string to_dot(const FiniteTree& tree, bool dynamics = false);

}  // namespace yoccoz
