#include "yoccoz/portals.hpp"

#include <algorithm>

namespace yoccoz {

const char* to_string(PortalType t) {
    switch (t) {
        case PortalType::I: return "I";
        case PortalType::II: return "II";
        case PortalType::III: return "III";
    }
    return "?";
}

std::vector<VertexRef> portal_witnesses(const ReturnMap& rm, VertexRef x) {
    const FiniteTree& tree = rm.tree();
    if (!tree.has_children(x)) throw std::invalid_argument("portals are only classified below the last level");
    std::vector<VertexRef> out;
    if (!rm.set().contains(x)) return out;
    const int n = rm.first_return_time(x);
    for (const VertexRef& c : tree.children(x)) {
        if (!rm.set().contains(c) && rm.first_return_time(c) == n) out.push_back(c);
    }
    return out;
}

std::optional<PortalInfo> classify_portal(const ReturnMap& rm, VertexRef x) {
    auto witnesses = portal_witnesses(rm, x);
    if (witnesses.empty()) return std::nullopt;

    const FiniteTree& tree = rm.tree();
    const int dx = tree.degree(x);
    const int nx = rm.first_return_time(x);
    PortalInfo info;
    info.vertex = x;
    info.witnesses = std::move(witnesses);
    info.type_III = true;
    for (const VertexRef& c : tree.children(x)) {
        if (tree.degree(c) != dx) continue;
        info.type_III = false;
        const int nc = rm.first_return_time(c);
        if (nc > nx) info.type_I = true;
        if (nc == nx) info.type_II = true;
    }
    info.type = info.type_I ? PortalType::I : info.type_II ? PortalType::II : PortalType::III;
    return info;
}

std::vector<PortalInfo> portals(const ReturnMap& rm) {
    const FiniteTree& tree = rm.tree();
    std::vector<PortalInfo> out;
    for (const Vertex& v : tree.vertices()) {
        if (v.level >= tree.length()) continue;
        if (auto p = classify_portal(rm, tree.ref(v.id))) out.push_back(std::move(*p));
    }
    return out;
}

namespace {

bool is_portal(const ReturnMap& rm, VertexRef x) {
    if (!rm.set().contains(x)) return false;
    return !portal_witnesses(rm, x).empty();
}

}  // namespace

std::vector<MainLemmaViolation> verify_main_lemma(const ReturnMap& rm) {
    const FiniteTree& tree = rm.tree();
    const VertexSet& X = rm.set();
    std::vector<MainLemmaViolation> out;

    for (const Vertex& v : tree.vertices()) {
        if (v.level >= tree.length()) continue;
        const VertexRef vr = tree.ref(v.id);
        for (VertexId cid : tree.children(v.id)) {
            const VertexRef c = tree.ref(cid);
            const int nc = rm.first_return_time(c);

            // Find R with N^R(v) = N^1(c).
            Return acc{0, vr};
            Return prev = acc;
            int R = 0;
            while (acc.time < nc) {
                prev = acc;
                const Return step = rm.first_return(acc.target);
                acc = {acc.time + step.time, step.target};
                ++R;
            }
            if (acc.time != nc) {
                out.push_back({v.id, cid, "first return of child is not a return time of the parent"});
                continue;
            }
            if (R >= 2 && !is_portal(rm, prev.target)) {
                out.push_back({v.id, cid, "Ret^{R-1}(v) is not a portal"});
            }

            // Higher returns of the child: N^S(c) = N^R(v) with F^{N^{R-1}(v)}(c) outside X.
            Return cacc{0, c};
            Return vacc{0, vr};
            Return vprev = vacc;
            int vR = 0;
            while (cacc.target.level >= 0) {
                const Return cstep = rm.first_return(cacc.target);
                cacc = {cacc.time + cstep.time, cstep.target};
                while (vacc.time < cacc.time) {
                    vprev = vacc;
                    const Return step = rm.first_return(vacc.target);
                    vacc = {vacc.time + step.time, step.target};
                    ++vR;
                }
                if (vacc.time != cacc.time) {
                    out.push_back({v.id, cid, "a return time of the child is not a return time of the parent"});
                    break;
                }
                if (vR >= 2 && !X.contains(tree.apply_F(c, vprev.time)) && !is_portal(rm, vprev.target)) {
                    out.push_back({v.id, cid, "higher return passes outside X without a portal"});
                    break;
                }
            }
        }
    }
    return out;
}

bool type1_branch_criterion(const ReturnMap& rm, const Branch& branch, int l) {
    if (l < 0 || l + 1 > branch.length()) throw std::out_of_range("branch index out of range");
    const FiniteTree& tree = rm.tree();
    const VertexRef a = branch.at(l);
    const VertexRef b = branch.at(l + 1);
    return rm.first_return_time(a) < rm.first_return_time(b) && tree.degree(a) == tree.degree(b);
}

TypeIICondition type2_necessary_condition(const ReturnMap& rm, VertexRef x) {
    const FiniteTree& tree = rm.tree();
    TypeIICondition out;
    const int nx = rm.first_return_time(x);
    for (int n = 1; n < nx; ++n) {
        const VertexRef y = tree.apply_F(x, n);
        if (y.is_spine() || tree.degree(y) <= 1 || !tree.has_children(y)) continue;
        const int ny = rm.first_return_time(y);
        for (const VertexRef& c : tree.children(y)) {
            if (!rm.set().contains(c) && rm.first_return_time(c) == ny) {
                out.critical_hit = true;
                break;
            }
        }
        if (out.critical_hit) break;
    }
    const VertexRef r = rm.first_return(x).target;
    if (tree.has_children(r)) {
        int inside = 0;
        for (const VertexRef& c : tree.children(r))
            if (rm.set().contains(c)) ++inside;
        out.two_children_in_X = inside >= 2;
    }
    return out;
}

}  // namespace yoccoz
