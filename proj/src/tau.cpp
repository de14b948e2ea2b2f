#include "yoccoz/tau.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "yoccoz/portals.hpp"
#include "yoccoz/return_maps.hpp"

namespace yoccoz {

namespace {

// Checks R(l) = R against conditions 1-3, given tau on levels < l. `tau_at(x)` must
// answer for every x <= l - 1.
struct LevelCheck {
    int tau = 0;
    std::string condition;  // empty when legal
    std::string detail;
    License license = License::None;
};

template <class TauAt>
LevelCheck check_level(int H, const std::set<int>& E, int l, int R, TauAt tau_at) {
    LevelCheck out;
    if (R < 1) {
        out.condition = "2";
        out.detail = "R(" + std::to_string(l) + ") = " + std::to_string(R) + " is below 1";
        return out;
    }
    auto iter = [&](int x, int k) {
        for (int i = 0; i < k; ++i) x = tau_at(x);
        return x;
    };
    const int before = iter(l - 1, R - 1);
    const int landing = tau_at(before);
    out.tau = landing + 1;

    if (l <= H) {
        if (out.tau != l - H) {
            out.condition = "1";
            out.detail = "tau(" + std::to_string(l) + ") must be " + std::to_string(l - H);
            return out;
        }
    } else if (out.tau <= -H || out.tau >= l) {
        out.condition = "1";
        out.detail = "tau(" + std::to_string(l) + ") = " + std::to_string(out.tau) + " outside (-H, l)";
        return out;
    }

    if (R >= 2) {
        const bool a = tau_at(before + 1) <= landing;
        const bool b = E.contains(before);
        out.license = a && b ? License::Both : a ? License::Cond3a : b ? License::Cond3b : License::None;
        if (!a && !b) {
            out.condition = "3";
            out.detail = "R(" + std::to_string(l) + ") = " + std::to_string(R) + ": tau(" + std::to_string(before + 1) +
                         ") > " + std::to_string(landing) + " and " + std::to_string(before) + " is not in E";
        }
    }
    return out;
}

int orbit_depth(int l, const std::vector<int>& tau) {
    if (l <= 0) return 0;
    int S = 1;
    int x = tau[l];
    while (x > 0) {
        x = tau[x];
        ++S;
    }
    return S;
}

struct Search {
    int H;
    const std::set<int>& E;
    int L;
    std::vector<int> R;
    std::vector<int> tau;  // tau[l] for 0 <= l <= current length

    int at(int x) const { return x <= 0 ? x - H : tau[x]; }

    int length() const { return static_cast<int>(R.size()); }

    template <class Leaf>
    std::uint64_t run(const Leaf& leaf) {
        const int l = length();
        if (l == L) {
            leaf(*this);
            return 1;
        }
        std::uint64_t count = 0;
        const int M = orbit_depth(l, tau);
        for (int r = 1; r <= M + 1; ++r) {
            const LevelCheck c = check_level(H, E, l + 1, r, [&](int x) { return at(x); });
            if (!c.condition.empty()) continue;
            R.push_back(r);
            tau.push_back(c.tau);
            count += run(leaf);
            R.pop_back();
            tau.pop_back();
        }
        return count;
    }

    // Legal prefixes of exactly `depth` levels.
    void prefixes(int depth, std::vector<std::vector<int>>& out) {
        const int l = length();
        if (l == depth) {
            out.push_back(R);
            return;
        }
        const int M = orbit_depth(l, tau);
        for (int r = 1; r <= M + 1; ++r) {
            const LevelCheck c = check_level(H, E, l + 1, r, [&](int x) { return at(x); });
            if (!c.condition.empty()) continue;
            R.push_back(r);
            tau.push_back(c.tau);
            prefixes(depth, out);
            R.pop_back();
            tau.pop_back();
        }
    }
};

void check_args(int H, int L) {
    if (H < 1) throw std::invalid_argument("H must be at least 1");
    if (L < 0) throw std::invalid_argument("length must be non-negative");
}

}  // namespace

TauFunction::TauFunction(int H, std::set<int> E, std::vector<int> R) : H_(H), E_(std::move(E)), R_(std::move(R)) {
    if (H_ < 1) throw std::invalid_argument("H must be at least 1");
    tau_.push_back(-H_);
    for (int l = 1; l <= length(); ++l) {
        const int r = R_[l - 1];
        if (r < 1) break;
        int x = l - 1;
        for (int i = 0; i < r; ++i) x = x <= 0 ? x - H_ : tau_[x];
        tau_.push_back(x + 1);
    }
}

int TauFunction::R(int l) const {
    if (l < 1 || l > length()) throw std::out_of_range("R(l) needs 1 <= l <= L");
    return R_[l - 1];
}

int TauFunction::operator()(int l) const {
    if (l <= 0) return l - H_;
    if (l > length()) throw std::out_of_range("tau(l) past the stored length");
    if (l > defined_length()) throw std::domain_error("tau undefined after an R value below 1");
    return tau_[l];
}

int TauFunction::iterate(int l, int k) const {
    if (k < 0) throw std::invalid_argument("iterate count must be non-negative");
    for (int i = 0; i < k; ++i) l = (*this)(l);
    return l;
}

int tau_value(const TauFunction& tf, int l) { return tf(l); }

TauReport validate(const TauFunction& tf) {
    TauReport rep;
    if (!tf.in_E(0)) rep.issues.push_back({0, "E", "0 is not in E"});
    for (int m : tf.E())
        if (m < 0) rep.issues.push_back({0, "E", "negative element " + std::to_string(m) + " in E"});

    for (int l = 1; l <= tf.length(); ++l) {
        const LevelCheck c = check_level(tf.H(), tf.E(), l, tf.R(l), [&](int x) { return tf(x); });
        if (c.condition.empty()) continue;
        rep.issues.push_back({l, c.condition, c.detail});
        if (c.condition == "2") {
            if (l < tf.length())
                rep.issues.push_back({l + 1, "2", "levels after " + std::to_string(l) + " are undefined"});
            break;
        }
    }
    return rep;
}

int M_of(const TauFunction& tf, int l) {
    if (l < 1 || l > tf.length()) throw std::out_of_range("M(l) needs 1 <= l <= L");
    int S = 1;
    for (int x = tf(l); x > 0; x = tf(x)) ++S;
    return S;
}

std::set<int> tau_portals(const TauFunction& tf) {
    std::set<int> out;
    for (int l = 1; l < tf.length(); ++l) {
        const bool by_tau = tf(l + 1) <= tf(l);
        const bool by_R = tf.R(l + 1) >= 2;
        if (by_tau != by_R) throw std::logic_error("tau-portal equivalence broken at " + std::to_string(l));
        if (by_tau) out.insert(l);
    }
    return out;
}

const char* to_string(License l) {
    switch (l) {
        case License::None: return "none";
        case License::Cond3a: return "3a";
        case License::Cond3b: return "3b";
        case License::Both: return "3a+3b";
    }
    return "?";
}

std::vector<Extension> valid_extensions(const TauFunction& tf) {
    const int L = tf.length();
    if (tf.defined_length() < L) throw std::domain_error("tau is undefined on part of its length");
    const int M = L == 0 ? 0 : M_of(tf, L);
    std::vector<Extension> out;
    for (int r = 1; r <= M + 1; ++r) {
        const LevelCheck c = check_level(tf.H(), tf.E(), L + 1, r, [&](int x) { return tf(x); });
        if (c.condition.empty()) out.push_back({r, c.tau, c.license});
    }
    return out;
}

std::set<int> valid_extension_values(const TauFunction& tf) {
    std::set<int> out;
    for (const Extension& e : valid_extensions(tf)) out.insert(e.R);
    return out;
}

TauFunction extend(const TauFunction& tf, int R) {
    const int L = tf.length();
    if (tf.defined_length() < L) throw std::domain_error("tau is undefined on part of its length");
    const LevelCheck c = check_level(tf.H(), tf.E(), L + 1, R, [&](int x) { return tf(x); });
    if (!c.condition.empty()) throw InvalidExtension(R, c.condition, "condition " + c.condition + ": " + c.detail);
    std::vector<int> next = tf.choices();
    next.push_back(R);
    return TauFunction(tf.H(), tf.E(), std::move(next));
}

std::uint64_t enumerate(int H, const std::set<int>& E, int L, const TauVisitor& visit) {
    check_args(H, L);
    Search s{H, E, L, {}, {-H}};
    return s.run([&](const Search& st) {
        if (visit) visit(TauFunction(H, E, st.R));
    });
}

std::uint64_t enumerate_count(int H, const std::set<int>& E, int L, int jobs) {
    check_args(H, L);
    if (jobs <= 1) return enumerate(H, E, L);

    // Split at the shallowest depth that gives every worker a few subtrees.
    std::vector<std::vector<int>> work;
    for (int depth = 0; depth <= L; ++depth) {
        work.clear();
        Search s{H, E, L, {}, {-H}};
        s.prefixes(depth, work);
        if (work.size() >= static_cast<std::size_t>(4 * jobs)) break;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> total{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < work.size(); i = next++) {
            const TauFunction prefix(H, E, work[i]);
            Search s{H, E, L, work[i], {-H}};
            for (int l = 1; l <= prefix.length(); ++l) s.tau.push_back(prefix(l));
            total += s.run([](const Search&) {});
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return total;
}

int esc(const TauFunction& tf, int m, EscMode mode) {
    if (!tf.in_E(m)) throw std::invalid_argument("esc(m) needs m in E");
    const int L = tf.length();

    if (m >= 1) {
        bool used = false;
        for (int l = 1; l <= L && !used; ++l) {
            const int r = tf.R(l);
            if (mode == EscMode::Literal)
                used = tf.iterate(l - 1, r) == m;
            else
                used = r >= 2 && tf.iterate(l - 1, r - 1) == m;
        }
        if (!used) return 0;
    }

    for (int k = 1; k + 1 <= L; ++k) {
        if (tf.in_E(k) || tf(k) != m || tf.R(k + 1) != 2) continue;
        for (int l = 1; l + 1 <= L; ++l) {
            if (l == k) continue;
            const int r = tf.R(l + 1);
            if (r >= 2 && tf.iterate(l, r - 2) == k) return 2;
        }
    }
    return 1;
}

int esc_total(const TauFunction& tf, EscMode mode) {
    int sum = 0;
    for (int m : tf.E()) sum += esc(tf, m, mode);
    return sum;
}

int first_return_time_tau(const TauFunction& tf, int l) {
    if (l < 1 || l > tf.length()) throw std::out_of_range("first return time needs 1 <= l <= L");
    const int gap = l - tf(l);
    if (gap % tf.H() != 0 || gap <= 0) throw std::logic_error("l - tau(l) is not a positive multiple of H");
    return gap / tf.H();
}

TauFunction rbonacci_tau(int r, int L) {
    if (r < 2) throw std::invalid_argument("r must be at least 2");
    if (L < 0) throw std::invalid_argument("length must be non-negative");
    std::vector<long long> a{1};
    std::vector<long long> b{0};
    while (b.back() + 1 <= L) {
        long long next = 0;
        for (int i = 1; i <= r && static_cast<int>(a.size()) - i >= 0; ++i) next += a[a.size() - i];
        a.push_back(next);
        b.push_back(b.back() + next);
    }
    std::vector<int> R(L, 1);
    for (std::size_t K = 1; K < b.size(); ++K) {
        const long long pos = 1 + b[K];
        if (pos <= L) R[pos - 1] = std::min<int>(r, static_cast<int>(K) + 1);
    }
    return TauFunction(1, {0}, std::move(R));
}

TailStats tail_stats(const TauFunction& tf, int window) {
    if (window < 1) throw std::invalid_argument("window must be positive");
    if (tf.length() < 1) throw std::invalid_argument("tail statistics need L >= 1");
    const int from = std::max(1, tf.length() - window + 1);
    TailStats st{tf(from), tf(from)};
    for (int l = from; l <= tf.length(); ++l) {
        st.min = std::min(st.min, tf(l));
        st.max = std::max(st.max, tf(l));
    }
    return st;
}

Extraction extract_tau(const FiniteTree& tree, const Branch& branch) {
    const int L = tree.length();
    const int H = tree.H();
    if (branch.length() != L) throw ExtractionError("branch does not reach the last level");
    for (int l = 0; l <= L; ++l) {
        const VertexId id = branch.ids[l];
        if (id < 0 || static_cast<std::size_t>(id) >= tree.size() || tree.vertex(id).level != l)
            throw ExtractionError("branch vertex " + std::to_string(l) + " is not at its level");
        if (l > 0 && tree.vertex(id).parent != branch.ids[l - 1]) throw ExtractionError("branch is not a parent chain");
        if (tree.vertex(id).degree < 2) throw ExtractionError("branch is not critical");
    }

    const ReturnMap rm(tree, VertexSet::of(tree, branch));
    std::vector<int> tau(L + 1, -H);
    for (int l = 1; l <= L; ++l) tau[l] = l - rm.first_return_time(branch.at(l)) * H;
    auto at = [&](int x) { return x <= 0 ? x - H : tau[x]; };

    std::vector<int> R;
    for (int l = 1; l <= L; ++l) {
        int x = l - 1;
        int found = 0;
        for (int r = 1; r <= l + 1; ++r) {
            x = at(x);
            if (x + 1 == tau[l]) {
                found = r;
                break;
            }
        }
        if (!found) throw ExtractionError("first returns at level " + std::to_string(l) + " follow no choice of R");
        R.push_back(found);
    }

    std::set<int> E{0};
    for (int l = 1; l < L; ++l) {
        if (tau[l + 1] <= tau[l]) continue;
        if (!portal_witnesses(rm, branch.at(l)).empty()) E.insert(l);
    }
    return {TauFunction(H, std::move(E), std::move(R)), {}};
}

Extraction extract_tau(const FiniteTree& tree) {
    const CriticalBranchResult cb = critical_branch(tree);
    if (cb.ambiguous_at) throw ExtractionError("critical branch is ambiguous at vertex " + std::to_string(*cb.ambiguous_at));
    if (!cb.branch) throw ExtractionError("tree has no critical branch");
    return extract_tau(tree, *cb.branch);
}

}  // namespace yoccoz
