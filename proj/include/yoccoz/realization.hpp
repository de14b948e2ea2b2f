#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "yoccoz/tau.hpp"
#include "yoccoz/tree.hpp"

namespace yoccoz {

/// Critical degrees D_l for 0 <= l <= L+1. Levels below 0 use D_0.
struct AdmissibleSequence {
    std::vector<int> values;

    [[nodiscard]] int at(int l) const { return values.at(l < 0 ? 0 : l); }
    [[nodiscard]] int size() const { return static_cast<int>(values.size()); }
};

/// D_l = D + sum over m in E, m >= l of (esc(m) + slack).
[[nodiscard]] AdmissibleSequence default_admissible(const TauFunction& tf, int D, int slack = 0,
                                                    EscMode mode = EscMode::Literal);

/// Covers 0..L+1, D_l - D_{l+1} >= esc(l) (0 off E), and every D_l >= 2.
[[nodiscard]] bool is_admissible(const TauFunction& tf, const AdmissibleSequence& seq,
                                 EscMode mode = EscMode::Literal);

/// Raised when the next level cannot be attached: no child of the portal has the
/// required return time.
class RealizationError : public std::runtime_error {
public:
    RealizationError(int level, int R, std::string kase, std::string reason);
    [[nodiscard]] int level() const { return level_; }
    [[nodiscard]] int R() const { return R_; }
    /// "R=1", "R=2", "R>=3 compound" or "R>=3 simple".
    [[nodiscard]] const std::string& kase() const { return case_; }
    [[nodiscard]] const std::string& reason() const { return reason_; }

private:
    int level_;
    int R_;
    std::string case_;
    std::string reason_;
};

/// A tree together with its critical branch c_0..c_L.
struct Realization {
    FiniteTree tree;
    Branch branch;
};

struct RealizeOptions {
    /// Trees grow roughly like D_0^L; refuse longer requests.
    int max_length = 12;
};

/// Tree of length 0 whose root has degree D_0.
[[nodiscard]] Realization realization_base(const TauFunction& tf, const AdmissibleSequence& seq);

/// Attaches level L+1 to a realization of tf up to level L: c_{L+1} gets degree D_{L+1}
/// and first return time N^{R(L+1)}(c_L); every other new vertex has degree 1.
[[nodiscard]] Realization extend_one_level(const Realization& current, const TauFunction& tf,
                                           const AdmissibleSequence& seq);

/// Tree of length L with a single critical branch whose return function is tf and whose
/// critical degrees are seq.
[[nodiscard]] Realization realize(const TauFunction& tf, const AdmissibleSequence& seq,
                                  const RealizeOptions& opts = {});

}  // namespace yoccoz
