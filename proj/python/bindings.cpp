#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "yoccoz/io.hpp"
#include "yoccoz/portals.hpp"
#include "yoccoz/realization.hpp"
#include "yoccoz/tau.hpp"

namespace py = pybind11;
using namespace yoccoz;

namespace {

// Plain Python containers cross the boundary through the JSON text form.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::handle& obj) {
    return parse_json(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

TauFunction tau_arg(const py::handle& obj) { return tau_from_json(from_py(obj)); }
FiniteTree tree_arg(const py::handle& obj) { return tree_from_json(from_py(obj)); }

EscMode esc_mode(const std::string& s) {
    if (s == "literal") return EscMode::Literal;
    if (s == "usage") return EscMode::PortalUsage;
    throw std::invalid_argument("esc mode must be literal or usage");
}

Json violations(const std::vector<MainLemmaViolation>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(Json{{"vertex", v.vertex}, {"child", v.child}, {"reason", v.reason}});
    return a;
}

}  // namespace

PYBIND11_MODULE(_yoccoz, m) {
    m.doc() = "Trees with dynamics and critical return functions";

    py::exception<RealizationError>(m, "RealizationError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const RealizationError& e) {
            const py::object type = py::module_::import("yoccoz._yoccoz").attr("RealizationError");
            py::object exc = type(e.what());
            exc.attr("level") = e.level();
            exc.attr("R") = e.R();
            exc.attr("case") = e.kase();
            PyErr_SetObject(type.ptr(), exc.ptr());
        } catch (const InputError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("validate", [](const py::object& tau) { return to_py(to_json(validate(tau_arg(tau)))); }, py::arg("tau"));

    m.def("tau_values", [](const py::object& tau) {
        const TauFunction tf = tau_arg(tau);
        std::vector<int> out;
        for (int l = 1; l <= tf.length(); ++l) out.push_back(tf(l));
        return out;
    }, py::arg("tau"));

    m.def("extensions", [](const py::object& tau) {
        py::list out;
        for (const Extension& e : valid_extensions(tau_arg(tau))) {
            py::dict d;
            d["R"] = e.R;
            d["tau"] = e.tau;
            d["license"] = to_string(e.licensed_by);
            out.append(d);
        }
        return out;
    }, py::arg("tau"));

    m.def("extend", [](const py::object& tau, int R) { return to_py(tau_to_json(extend(tau_arg(tau), R))); },
          py::arg("tau"), py::arg("R"));

    m.def("enumerate", [](int H, const std::set<int>& E, int L) {
        py::list out;
        enumerate(H, E, L, [&](const TauFunction& tf) { out.append(to_py(tau_to_json(tf))); });
        return out;
    }, py::arg("H"), py::arg("E"), py::arg("length"));

    m.def("count", [](int H, const std::set<int>& E, int L, int jobs) {
        py::gil_scoped_release release;
        return enumerate_count(H, E, L, jobs);
    }, py::arg("H"), py::arg("E"), py::arg("length"), py::arg("jobs") = 1);

    m.def("esc", [](const py::object& tau, int level, const std::string& mode) {
        return esc(tau_arg(tau), level, esc_mode(mode));
    }, py::arg("tau"), py::arg("level"), py::arg("mode") = "literal");

    m.def("default_admissible", [](const py::object& tau, int D, int slack, const std::string& mode) {
        return default_admissible(tau_arg(tau), D, slack, esc_mode(mode)).values;
    }, py::arg("tau"), py::arg("D") = 2, py::arg("slack") = 0, py::arg("mode") = "literal");

    m.def("first_return_time", [](const py::object& tau, int level) {
        return first_return_time_tau(tau_arg(tau), level);
    }, py::arg("tau"), py::arg("level"));

    m.def("rbonacci", [](int r, int L) { return to_py(tau_to_json(rbonacci_tau(r, L))); }, py::arg("r"),
          py::arg("length"));

    m.def("realize", [](const py::object& tau, int D, int slack, const std::string& mode, int max_length) {
        const TauFunction tf = tau_arg(tau);
        RealizeOptions opts;
        opts.max_length = max_length;
        return to_py(tree_to_json(realize(tf, default_admissible(tf, D, slack, esc_mode(mode)), opts).tree));
    }, py::arg("tau"), py::arg("D") = 2, py::arg("slack") = 0, py::arg("mode") = "literal",
          py::arg("max_length") = RealizeOptions{}.max_length);

    m.def("extract", [](const py::object& tree) { return to_py(tau_to_json(extract_tau(tree_arg(tree)).tau)); },
          py::arg("tree"));

    m.def("check", [](const py::object& tree) {
        const FiniteTree t = tree_arg(tree);
        const ValidationReport axioms = check_axioms(t);
        Json j;
        j["axioms"] = to_json(axioms);
        bool ok = axioms.ok();
        if (ok) {
            const auto vc = verify_main_lemma(ReturnMap(t, VertexSet::critical(t)));
            j["main_lemma"]["critical"] = violations(vc);
            ok = vc.empty();
            const CriticalBranchResult cb = critical_branch(t);
            if (cb.branch && !cb.ambiguous_at) {
                const auto vb = verify_main_lemma(ReturnMap(t, VertexSet::of(t, *cb.branch)));
                j["main_lemma"]["branch"] = violations(vb);
                ok = ok && vb.empty();
            }
        }
        j["ok"] = ok;
        return to_py(j);
    }, py::arg("tree"));

    m.def("portals", [](const py::object& tree, const std::string& set) {
        const FiniteTree t = tree_arg(tree);
        VertexSet X;
        if (set == "critical") {
            X = VertexSet::critical(t);
        } else if (set == "branch") {
            const CriticalBranchResult cb = critical_branch(t);
            if (!cb.branch || cb.ambiguous_at) throw std::invalid_argument("no unique critical branch");
            X = VertexSet::of(t, *cb.branch);
        } else {
            throw std::invalid_argument("set must be branch or critical");
        }
        Json list = Json::array();
        for (const PortalInfo& p : portals(ReturnMap(t, std::move(X)))) list.push_back(to_json(p));
        return to_py(list);
    }, py::arg("tree"), py::arg("set") = "branch");

    m.def("to_dot", [](const py::object& tree, bool dynamics) { return to_dot(tree_arg(tree), dynamics); },
          py::arg("tree"), py::arg("dynamics") = false);
}
