#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "yoccoz/tree.hpp"

namespace yoccoz {

/// A tau function of finite length, stored as its choice sequence R(1..L).
///
/// tau(l) = l - H for l <= H, and tau(l) = tau^{R(l)}(l-1) + 1 otherwise. The tau values
/// are derived once on construction. Any R sequence is accepted; use validate() to check
/// the admissibility conditions.
class TauFunction {
public:
    TauFunction(int H, std::set<int> E, std::vector<int> R = {});

    [[nodiscard]] int H() const { return H_; }
    [[nodiscard]] const std::set<int>& E() const { return E_; }
    [[nodiscard]] int length() const { return static_cast<int>(R_.size()); }
    /// R(l) for 1 <= l <= L.
    [[nodiscard]] int R(int l) const;
    [[nodiscard]] const std::vector<int>& choices() const { return R_; }
    [[nodiscard]] bool in_E(int m) const { return E_.contains(m); }

    /// tau(l) for l <= L. Throws std::out_of_range past L, std::domain_error when an
    /// earlier R value is below 1 and tau is undefined from there on.
    [[nodiscard]] int operator()(int l) const;
    /// tau^k(l), k >= 0.
    [[nodiscard]] int iterate(int l, int k) const;
    /// Number of levels from 1 on whose tau value is defined.
    [[nodiscard]] int defined_length() const { return static_cast<int>(tau_.size()) - 1; }

    friend bool operator==(const TauFunction& a, const TauFunction& b) {
        return a.H_ == b.H_ && a.E_ == b.E_ && a.R_ == b.R_;
    }

private:
    int H_;
    std::set<int> E_;
    std::vector<int> R_;
    std::vector<int> tau_;  // tau_[l] for 0 <= l <= defined length
};

/// tau(l), same as tf(l).
[[nodiscard]] int tau_value(const TauFunction& tf, int l);

struct TauIssue {
    /// Level the issue is reported at (0 for issues with E itself).
    int level;
    /// "1", "2", "3" for the numbered conditions, "E" for the exceptional set.
    std::string condition;
    std::string detail;
};

struct TauReport {
    std::vector<TauIssue> issues;
    [[nodiscard]] bool ok() const { return issues.empty(); }
};

[[nodiscard]] TauReport validate(const TauFunction& tf);

/// min{S >= 1 : tau^S(l) <= 0} for 1 <= l <= L.
[[nodiscard]] int M_of(const TauFunction& tf, int l);

/// {l : tau(l+1) <= tau(l)} for 1 <= l < L. Cross-checked against {l : R(l+1) >= 2}.
[[nodiscard]] std::set<int> tau_portals(const TauFunction& tf);

enum class License { None, Cond3a, Cond3b, Both };

[[nodiscard]] const char* to_string(License l);

struct Extension {
    int R;
    int tau;
    License licensed_by;
};

/// Every legal R(L+1) in ascending order, with the resulting tau(L+1).
[[nodiscard]] std::vector<Extension> valid_extensions(const TauFunction& tf);
[[nodiscard]] std::set<int> valid_extension_values(const TauFunction& tf);

class InvalidExtension : public std::invalid_argument {
public:
    InvalidExtension(int R, std::string condition, const std::string& detail)
        : std::invalid_argument(detail), R_(R), condition_(std::move(condition)) {}
    [[nodiscard]] int R() const { return R_; }
    [[nodiscard]] const std::string& condition() const { return condition_; }

private:
    int R_;
    std::string condition_;
};

/// Appends R(L+1) = R. Throws InvalidExtension naming the violated condition.
[[nodiscard]] TauFunction extend(const TauFunction& tf, int R);

using TauVisitor = std::function<void(const TauFunction&)>;

/// Depth-first enumeration of every valid tau of length L with the given H and E, in
/// ascending R order at each level. Calls `visit` (when set) for each one and returns the
/// count.
std::uint64_t enumerate(int H, const std::set<int>& E, int L, const TauVisitor& visit = {});

/// Counting-only enumeration that fans subtrees of the search out to `jobs` threads.
std::uint64_t enumerate_count(int H, const std::set<int>& E, int L, int jobs);

enum class EscMode {
    /// Case 1 tests {l : tau^{R(l)}(l-1) = m}, taken literally.
    Literal,
    /// Case 1 tests portal usage {l : R(l) >= 2, tau^{R(l)-1}(l-1) = m}.
    PortalUsage,
};

/// Escape multiplicity needed at c_m, evaluated over the stored prefix. m must be in E.
[[nodiscard]] int esc(const TauFunction& tf, int m, EscMode mode = EscMode::Literal);
/// Sum of esc over E.
[[nodiscard]] int esc_total(const TauFunction& tf, EscMode mode = EscMode::Literal);

/// (l - tau(l)) / H for 1 <= l <= L.
[[nodiscard]] int first_return_time_tau(const TauFunction& tf, int l);

/// The r-bonacci tau (H = 1, E = {0}): R(1 + b_K) = min(r, K + 1) at block boundaries
/// b_K and R = 1 elsewhere, so that tau(b_k) = b_{k-1}.
[[nodiscard]] TauFunction rbonacci_tau(int r, int L);

struct TailStats {
    int min = 0;
    int max = 0;
    /// Limit behaviour cannot be decided from a prefix; these numbers are indicative only.
    static constexpr bool conclusive = false;
};

/// Minimum and maximum of tau over the last `window` levels.
[[nodiscard]] TailStats tail_stats(const TauFunction& tf, int window);

class ExtractionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Extraction {
    TauFunction tau;
    /// Branch portals at negative levels, which cannot enter E. Always empty for trees
    /// whose spine has a single child per vertex.
    std::vector<int> negative_portals;
};

/// Reads tau off the first returns of `branch` to itself. The branch must be critical
/// and run the full length of the tree.
[[nodiscard]] Extraction extract_tau(const FiniteTree& tree, const Branch& branch);
/// Same, using the critical branch of the tree.
[[nodiscard]] Extraction extract_tau(const FiniteTree& tree);

}  // namespace yoccoz
