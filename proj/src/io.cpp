#include "yoccoz/io.hpp"

#include <sstream>

namespace yoccoz {

namespace {

int get_int(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

const Json& get_array(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
    return v;
}

std::string node(VertexRef v) { return v.is_spine() ? "s" + std::to_string(-v.level) : "v" + std::to_string(v.id); }

}  // namespace

Json tree_to_json(const FiniteTree& tree) {
    Json j;
    j["H"] = tree.H();
    j["D0"] = tree.root_degree();
    j["L"] = tree.length();
    Json vs = Json::array();
    for (const Vertex& v : tree.vertices()) {
        Json o;
        o["id"] = v.id;
        o["level"] = v.level;
        o["parent"] = v.parent == kSpine ? Json(nullptr) : Json(v.parent);
        o["deg"] = v.degree;
        o["image"] = v.level - tree.H() <= 0 ? Json("spine") : Json(v.image);
        vs.push_back(std::move(o));
    }
    j["vertices"] = std::move(vs);
    return j;
}

FiniteTree tree_from_json(const Json& j) {
    const int H = get_int(j, "H");
    const int D0 = get_int(j, "D0");
    const int L = get_int(j, "L");
    std::vector<Vertex> vs;
    for (const Json& o : get_array(j, "vertices")) {
        Vertex v;
        v.id = get_int(o, "id");
        v.level = get_int(o, "level");
        v.degree = get_int(o, "deg");
        if (!o.contains("parent")) throw InputError("vertex without \"parent\"");
        const Json& p = o.at("parent");
        if (p.is_null())
            v.parent = kSpine;
        else if (p.is_number_integer())
            v.parent = p.get<int>();
        else
            throw InputError("\"parent\" must be an integer or null");
        if (!o.contains("image")) throw InputError("vertex without \"image\"");
        const Json& im = o.at("image");
        if (im.is_string()) {
            if (im.get<std::string>() != "spine") throw InputError("\"image\" string must be \"spine\"");
            v.image = v.level - H == 0 ? 0 : kSpine;
        } else if (im.is_number_integer()) {
            v.image = im.get<int>();
        } else {
            throw InputError("\"image\" must be an integer or \"spine\"");
        }
        vs.push_back(v);
    }
    if (H < 1 || D0 < 2) throw InputError("tree needs H >= 1 and D0 >= 2");
    return FiniteTree::from_parts(H, D0, L, std::move(vs));
}

Json tau_to_json(const TauFunction& tf) {
    Json j;
    j["H"] = tf.H();
    j["E"] = Json(std::vector<int>(tf.E().begin(), tf.E().end()));
    j["R"] = Json(tf.choices());
    return j;
}

TauFunction tau_from_json(const Json& j) {
    const int H = get_int(j, "H");
    if (H < 1) throw InputError("H must be at least 1");
    std::set<int> E;
    for (const Json& e : get_array(j, "E")) {
        if (!e.is_number_integer()) throw InputError("E entries must be integers");
        E.insert(e.get<int>());
    }
    std::vector<int> R;
    for (const Json& r : get_array(j, "R")) {
        if (!r.is_number_integer()) throw InputError("R entries must be integers");
        R.push_back(r.get<int>());
    }
    return TauFunction(H, std::move(E), std::move(R));
}

Json to_json(const TauReport& rep) {
    Json j;
    j["valid"] = rep.ok();
    Json issues = Json::array();
    for (const TauIssue& i : rep.issues) issues.push_back(Json{{"level", i.level}, {"condition", i.condition}, {"detail", i.detail}});
    j["issues"] = std::move(issues);
    return j;
}

Json to_json(const ValidationReport& rep) {
    Json j;
    j["valid"] = rep.ok();
    Json issues = Json::array();
    for (const AxiomIssue& i : rep.issues)
        issues.push_back(Json{{"axiom", to_string(i.axiom)}, {"vertex", i.vertex}, {"detail", i.detail}});
    j["issues"] = std::move(issues);
    return j;
}

Json to_json(const PortalInfo& p) {
    Json j;
    j["id"] = p.vertex.is_spine() ? Json("spine") : Json(p.vertex.id);
    j["level"] = p.vertex.level;
    j["type"] = to_string(p.type);
    Json types = Json::array();
    if (p.type_I) types.push_back("I");
    if (p.type_II) types.push_back("II");
    if (p.type_III) types.push_back("III");
    j["types"] = std::move(types);
    j["multiplicity"] = p.simple() ? "simple" : "compound";
    Json w = Json::array();
    for (const VertexRef& v : p.witnesses) w.push_back(v.id);
    j["witnesses"] = std::move(w);
    return j;
}

Json to_json(const RealizationError& e) {
    Json j;
    j["level"] = e.level();
    j["R"] = e.R();
    j["case"] = e.kase();
    j["reason"] = e.reason();
    return j;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

std::string to_dot(const FiniteTree& tree, bool dynamics) {
    std::ostringstream out;
    out << "digraph tree {\n  rankdir=TB;\n  node [shape=circle];\n";
    const int H = tree.H();
    for (int l = -H; l <= -1; ++l)
        out << "  " << node(VertexRef::spine(l)) << " [label=\"s" << -l << ":" << tree.root_degree()
            << "\", style=dotted];\n";
    for (const Vertex& v : tree.vertices())
        out << "  " << node(tree.ref(v.id)) << " [label=\"" << v.id << ":" << v.degree << "\"];\n";
    for (int l = -H; l <= -2; ++l)
        out << "  " << node(VertexRef::spine(l)) << " -> " << node(VertexRef::spine(l + 1)) << ";\n";
    out << "  " << node(VertexRef::spine(-1)) << " -> v0;\n";
    for (const Vertex& v : tree.vertices())
        if (v.parent != kSpine) out << "  v" << v.parent << " -> v" << v.id << ";\n";
    if (dynamics) {
        for (const Vertex& v : tree.vertices()) {
            const VertexRef img = tree.apply_F(tree.ref(v.id));
            out << "  " << node(tree.ref(v.id)) << " -> " << node(img) << " [style=dashed, constraint=false];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace yoccoz
