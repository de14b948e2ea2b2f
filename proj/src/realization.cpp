#include "yoccoz/realization.hpp"

#include <algorithm>

#include "yoccoz/portals.hpp"
#include "yoccoz/return_maps.hpp"

namespace yoccoz {

RealizationError::RealizationError(int level, int R, std::string kase, std::string reason)
    : std::runtime_error("level " + std::to_string(level) + " (R=" + std::to_string(R) + ", " + kase + "): " + reason),
      level_(level),
      R_(R),
      case_(std::move(kase)),
      reason_(std::move(reason)) {}

AdmissibleSequence default_admissible(const TauFunction& tf, int D, int slack, EscMode mode) {
    if (D < 2) throw std::invalid_argument("base degree must be at least 2");
    if (slack < 0) throw std::invalid_argument("slack must be non-negative");
    if (!validate(tf).ok()) throw std::invalid_argument("tau function is not valid");
    std::vector<int> extra;
    for (int m : tf.E()) extra.push_back(esc(tf, m, mode) + slack);

    AdmissibleSequence seq;
    for (int l = 0; l <= tf.length() + 1; ++l) {
        int d = D;
        int i = 0;
        for (int m : tf.E()) {
            if (m >= l) d += extra[i];
            ++i;
        }
        seq.values.push_back(d);
    }
    return seq;
}

bool is_admissible(const TauFunction& tf, const AdmissibleSequence& seq, EscMode mode) {
    const int L = tf.length();
    if (seq.size() < L + 2) return false;
    for (int v : seq.values)
        if (v < 2) return false;
    for (int l = 0; l + 1 < seq.size(); ++l) {
        const int need = tf.in_E(l) ? esc(tf, l, mode) : 0;
        if (seq.values[l] - seq.values[l + 1] < need) return false;
    }
    return true;
}

Realization realization_base(const TauFunction& tf, const AdmissibleSequence& seq) {
    if (seq.size() < 1) throw std::invalid_argument("degree sequence is empty");
    return {FiniteTree(tf.H(), seq.at(0)), Branch{{0}}};
}

namespace {

std::string case_label(const ReturnMap& rm, const Branch& branch, const TauFunction& tf, int L, int R) {
    if (R == 1) return "R=1";
    if (R == 2) return "R=2";
    const int m = tf.iterate(L, R - 1);
    const VertexRef cm = branch.at(m);
    if (m < 0 || !rm.tree().has_children(cm)) return "R>=3 simple";
    return portal_witnesses(rm, cm).size() >= 2 ? "R>=3 compound" : "R>=3 simple";
}

}  // namespace

Realization extend_one_level(const Realization& current, const TauFunction& tf, const AdmissibleSequence& seq) {
    const FiniteTree& tree = current.tree;
    const Branch& branch = current.branch;
    const int L = tree.length();
    if (branch.length() != L) throw std::invalid_argument("branch does not reach the last level");
    if (L + 1 > tf.length()) throw std::invalid_argument("tau function is shorter than the requested level");
    if (seq.size() < L + 2) throw std::invalid_argument("degree sequence does not cover the requested level");

    const int R = tf.R(L + 1);
    const ReturnMap rm(tree, VertexSet::of(tree, branch));
    const std::string kase = case_label(rm, branch, tf, L, R);
    auto fail = [&](const std::string& reason) { return RealizationError(L + 1, R, kase, reason); };

    const VertexRef cL = branch.at(L);
    const int N = L == 0 ? 1 : rm.first_return_time(cL);
    const int j = L - N * tree.H();
    if (L > 0 && j != tf(L)) throw fail("tree does not realize the prefix of tau");

    const int dL = tree.degree(cL);
    const int dNext = seq.at(L + 1);
    if (dNext < 1 || dNext > dL) throw fail("D_{L+1} must lie in 1..deg c_L");

    // Child of c_j that F^N(c_{L+1}) has to hit.
    VertexRef target;
    if (R == 1) {
        target = j + 1 <= 0 ? FiniteTree::top(j + 1) : branch.at(j + 1);
    } else {
        const VertexRef cj = branch.at(j);
        const int need = rm.nth_return(cj, R - 1).time;
        std::optional<VertexRef> found;
        for (const VertexRef& y : tree.children(cj)) {
            if (rm.set().contains(y) || rm.first_return_time(y) != need) continue;
            if (!found || y.id < found->id) found = y;
        }
        if (!found)
            throw fail("no child of c_" + std::to_string(j) + " outside the branch returns in " + std::to_string(need) +
                       " steps");
        target = *found;
    }

    // Walk the orbit of c_L backward so that F^N of the new vertex lands on the target.
    VertexRef y = target;
    for (int n = N - 1; n >= 1; --n) {
        const VertexRef u = tree.apply_F(cL, n);
        std::optional<VertexRef> pick;
        for (const VertexRef& w : tree.children(u)) {
            if (!(tree.apply_F(w) == y)) continue;
            const bool better = !pick || (tree.degree(w) == 1 && tree.degree(*pick) > 1) ||
                                (tree.degree(w) == tree.degree(*pick) && w.id < pick->id);
            if (better) pick = w;
        }
        if (!pick) throw fail("no child of F^" + std::to_string(n) + "(c_L) maps onto the routed vertex");
        y = *pick;
    }

    // Children for every level-L vertex.
    const auto level = tree.level(L);
    std::vector<std::vector<ChildSpec>> spec(level.size());
    std::size_t cL_index = 0;
    std::size_t cNext_pos = 0;
    for (std::size_t i = 0; i < level.size(); ++i) {
        const VertexRef u = tree.ref(level[i]);
        const int du = tree.degree(u);
        for (const VertexRef& w : tree.children(tree.apply_F(u))) {
            if (u == cL && w == y) {
                cL_index = i;
                cNext_pos = spec[i].size();
                spec[i].push_back({dNext, w.id});
                for (int k = 0; k < du - dNext; ++k) spec[i].push_back({1, w.id});
            } else {
                for (int k = 0; k < du; ++k) spec[i].push_back({1, w.id});
            }
        }
    }

    std::vector<std::vector<VertexId>> new_ids;
    FiniteTree next = tree.add_level(spec, &new_ids);
    Branch nb = branch;
    nb.ids.push_back(new_ids[cL_index][cNext_pos]);

    const ReturnMap check(next, VertexSet::of(next, nb));
    const int got = (L + 1) - check.first_return_time(nb.at(L + 1)) * next.H();
    if (got != tf(L + 1))
        throw fail("routed vertex returns to level " + std::to_string(got) + " instead of " + std::to_string(tf(L + 1)));
    return {std::move(next), std::move(nb)};
}

Realization realize(const TauFunction& tf, const AdmissibleSequence& seq, const RealizeOptions& opts) {
    if (tf.length() > opts.max_length)
        throw std::invalid_argument("length " + std::to_string(tf.length()) + " exceeds the cap of " +
                                    std::to_string(opts.max_length));
    if (!validate(tf).ok()) throw std::invalid_argument("tau function is not valid");
    if (seq.size() < tf.length() + 1) throw std::invalid_argument("degree sequence is too short");
    Realization r = realization_base(tf, seq);
    while (r.tree.length() < tf.length()) r = extend_one_level(r, tf, seq);
    return r;
}

}  // namespace yoccoz
