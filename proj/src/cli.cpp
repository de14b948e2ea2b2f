#include "yoccoz/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "yoccoz/io.hpp"
#include "yoccoz/portals.hpp"
#include "yoccoz/realization.hpp"
#include "yoccoz/return_maps.hpp"
#include "yoccoz/tau.hpp"
#include "yoccoz/tree.hpp"

namespace yoccoz::cli {

namespace {

std::string read_text(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

TauFunction load_tau(const std::string& path, std::istream& in) { return tau_from_json(parse_json(read_text(path, in))); }

FiniteTree load_tree(const std::string& path, std::istream& in) { return tree_from_json(parse_json(read_text(path, in))); }

Json tau_values(const TauFunction& tf) {
    Json v = Json::array();
    for (int l = 1; l <= tf.defined_length(); ++l) v.push_back(tf(l));
    return v;
}

Json extensions_json(const TauFunction& tf) {
    Json j;
    j["L"] = tf.length();
    Json list = Json::array();
    for (const Extension& e : valid_extensions(tf))
        list.push_back(Json{{"R", e.R}, {"tau", e.tau}, {"license", to_string(e.licensed_by)}});
    j["extensions"] = std::move(list);
    return j;
}

// Reports axiom failures and returns false when the tree is unusable.
bool require_axioms(const FiniteTree& tree, std::ostream& err) {
    const ValidationReport rep = check_axioms(tree);
    if (rep.ok()) return true;
    err << to_json(rep).dump(2) << "\n";
    return false;
}

Json violations_json(const std::vector<MainLemmaViolation>& vs) {
    Json a = Json::array();
    for (const MainLemmaViolation& v : vs) a.push_back(Json{{"vertex", v.vertex}, {"child", v.child}, {"reason", v.reason}});
    return a;
}

struct Options {
    std::string input;
    std::string out_path;
    int choose = 0;
    bool interactive = false;
    int H = 1;
    std::vector<int> E{0};
    int length = 1;
    bool emit = false;
    int jobs = 1;
    int D = 2;
    int slack = 0;
    std::string esc_mode = "literal";
    int max_length = 12;
    std::string set = "branch";
    int r = 2;
    bool dynamics = false;
};

int cmd_validate(const Options& o, std::istream& in, std::ostream& out) {
    const TauFunction tf = load_tau(o.input, in);
    const TauReport rep = validate(tf);
    Json j = to_json(rep);
    j["tau"] = tau_values(tf);
    out << j.dump(2) << "\n";
    return rep.ok() ? kOk : kInvalid;
}

int cmd_extensions(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const TauFunction tf = load_tau(o.input, in);
    const TauReport rep = validate(tf);
    if (!rep.ok()) {
        err << to_json(rep).dump(2) << "\n";
        return kInvalid;
    }
    out << extensions_json(tf).dump(2) << "\n";
    return kOk;
}

int cmd_step(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    // With --interactive, choices come from `in`, so the tau itself must come from a file.
    if (o.interactive && o.input == "-") throw InputError("--interactive needs the tau function in a file");
    TauFunction tf = load_tau(o.input, in);
    const TauReport rep = validate(tf);
    if (!rep.ok()) {
        err << to_json(rep).dump(2) << "\n";
        return kInvalid;
    }
    if (!o.interactive) {
        try {
            tf = extend(tf, o.choose);
        } catch (const InvalidExtension& e) {
            err << Json{{"R", e.R()}, {"condition", e.condition()}, {"reason", e.what()}}.dump() << "\n";
            return kInvalid;
        }
        out << tau_to_json(tf).dump() << "\n";
        return kOk;
    }
    for (;;) {
        const std::set<int> legal = valid_extension_values(tf);
        err << "L=" << tf.length() << ", legal R(" << tf.length() + 1 << "):";
        for (int r : legal) err << " " << r;
        err << " (empty line ends)\n> ";
        std::string line;
        if (!std::getline(in, line) || line.empty() || line == "q") break;
        int r = 0;
        std::istringstream ls(line);
        if (!(ls >> r) || !legal.contains(r)) {
            err << "illegal choice \"" << line << "\"\n";
            continue;
        }
        tf = extend(tf, r);
    }
    out << tau_to_json(tf).dump() << "\n";
    return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
    if (o.H < 1) throw InputError("--H must be at least 1");
    if (o.length < 0) throw InputError("--length must be non-negative");
    const std::set<int> E(o.E.begin(), o.E.end());
    std::uint64_t count = 0;
    if (o.emit)
        count = enumerate(o.H, E, o.length, [&](const TauFunction& tf) { out << tau_to_json(tf).dump() << "\n"; });
    else
        count = enumerate_count(o.H, E, o.length, o.jobs);
    out << Json{{"count", count}}.dump() << "\n";
    return kOk;
}

int cmd_realize(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const TauFunction tf = load_tau(o.input, in);
    const TauReport rep = validate(tf);
    if (!rep.ok()) {
        err << to_json(rep).dump(2) << "\n";
        return kInvalid;
    }
    if (o.esc_mode != "literal" && o.esc_mode != "usage") throw InputError("--esc-mode must be literal or usage");
    const EscMode mode = o.esc_mode == "literal" ? EscMode::Literal : EscMode::PortalUsage;
    if (o.D < 2 || o.slack < 0) throw InputError("--D must be at least 2 and --slack non-negative");
    const AdmissibleSequence seq = default_admissible(tf, o.D, o.slack, mode);
    RealizeOptions opts;
    opts.max_length = o.max_length;
    if (tf.length() > opts.max_length) throw InputError("length exceeds --max-length");
    try {
        const Realization r = realize(tf, seq, opts);
        const std::string text = tree_to_json(r.tree).dump(2) + "\n";
        if (o.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(o.out_path);
            if (!f) throw InputError("cannot write " + o.out_path);
            f << text;
        }
    } catch (const RealizationError& e) {
        err << to_json(e).dump() << "\n";
        return kRealizationFailed;
    }
    return kOk;
}

int cmd_extract(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const FiniteTree tree = load_tree(o.input, in);
    if (!require_axioms(tree, err)) return kInvalid;
    try {
        out << tau_to_json(extract_tau(tree).tau).dump() << "\n";
    } catch (const ExtractionError& e) {
        err << Json{{"error", e.what()}}.dump() << "\n";
        return kInvalid;
    }
    return kOk;
}

int cmd_portals(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const FiniteTree tree = load_tree(o.input, in);
    if (!require_axioms(tree, err)) return kInvalid;
    VertexSet X;
    if (o.set == "critical") {
        X = VertexSet::critical(tree);
    } else if (o.set == "branch") {
        const CriticalBranchResult cb = critical_branch(tree);
        if (!cb.branch || cb.ambiguous_at) {
            err << Json{{"error", "no unique critical branch"}}.dump() << "\n";
            return kInvalid;
        }
        X = VertexSet::of(tree, *cb.branch);
    } else {
        throw InputError("--set must be branch or critical");
    }
    const ReturnMap rm(tree, std::move(X));
    Json list = Json::array();
    for (const PortalInfo& p : portals(rm)) list.push_back(to_json(p));
    out << Json{{"set", o.set}, {"portals", list}}.dump(2) << "\n";
    return kOk;
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out) {
    const FiniteTree tree = load_tree(o.input, in);
    const ValidationReport axioms = check_axioms(tree);
    Json j;
    j["axioms"] = to_json(axioms);
    bool ok = axioms.ok();
    if (ok) {
        Json lemma;
        const ReturnMap crit(tree, VertexSet::critical(tree));
        const auto vc = verify_main_lemma(crit);
        lemma["critical"] = violations_json(vc);
        ok = ok && vc.empty();
        const CriticalBranchResult cb = critical_branch(tree);
        if (cb.branch && !cb.ambiguous_at) {
            const ReturnMap br(tree, VertexSet::of(tree, *cb.branch));
            const auto vb = verify_main_lemma(br);
            lemma["branch"] = violations_json(vb);
            ok = ok && vb.empty();
        }
        j["main_lemma"] = std::move(lemma);
    }
    j["ok"] = ok;
    out << j.dump(2) << "\n";
    return ok ? kOk : kInvalid;
}

int cmd_gen_fib(const Options& o, std::ostream& out) {
    if (o.r < 2 || o.length < 0) throw InputError("--r must be at least 2 and --length non-negative");
    out << tau_to_json(rbonacci_tau(o.r, o.length)).dump() << "\n";
    return kOk;
}

int cmd_export_dot(const Options& o, std::istream& in, std::ostream& out) {
    out << to_dot(load_tree(o.input, in), o.dynamics);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trees with dynamics and critical return functions"};
    app.require_subcommand(1);
    Options o;

    auto* validate_cmd = app.add_subcommand("validate", "Check a tau function");
    validate_cmd->add_option("tau", o.input, "tau JSON file, - for stdin")->required();

    auto* ext = app.add_subcommand("extensions", "List legal values of R(L+1)");
    ext->add_option("tau", o.input)->required();

    auto* step = app.add_subcommand("step", "Append one or more levels");
    step->add_option("tau", o.input)->required();
    auto* choose = step->add_option("--choose", o.choose, "R(L+1)");
    auto* inter = step->add_flag("--interactive", o.interactive, "Prompt for choices on stdin");
    choose->excludes(inter);
    step->callback([&] {
        if (!o.interactive && choose->count() == 0) throw CLI::RequiredError("--choose or --interactive");
    });

    auto* en = app.add_subcommand("enumerate", "Count or list all tau functions of a length");
    en->add_option("--H", o.H)->capture_default_str();
    en->add_option("--E", o.E, "Exceptional set, comma separated")->delimiter(',')->capture_default_str();
    en->add_option("--length", o.length)->required();
    en->add_flag("--emit", o.emit, "Stream each tau as NDJSON");
    en->add_option("--jobs", o.jobs, "Worker threads for counting")->check(CLI::PositiveNumber);

    auto* re = app.add_subcommand("realize", "Build a tree realizing a tau function");
    re->add_option("tau", o.input)->required();
    re->add_option("--D", o.D, "Degree of c_l beyond max E")->capture_default_str();
    re->add_option("--slack", o.slack, "Extra degree drop at every point of E")->capture_default_str();
    re->add_option("--esc-mode", o.esc_mode, "literal or usage")->capture_default_str();
    re->add_option("--max-length", o.max_length)->capture_default_str();
    re->add_option("--out", o.out_path, "Write the tree here instead of stdout");

    auto* ex = app.add_subcommand("extract", "Read tau off a tree");
    ex->add_option("tree", o.input)->required();

    auto* po = app.add_subcommand("portals", "Portal report");
    po->add_option("tree", o.input)->required();
    po->add_option("--set", o.set, "branch or critical")->capture_default_str();

    auto* ch = app.add_subcommand("check", "Axioms and portal passage");
    ch->add_option("tree", o.input)->required();

    auto* fib = app.add_subcommand("gen-fib", "r-bonacci tau function");
    fib->add_option("--r", o.r)->capture_default_str();
    fib->add_option("--length", o.length)->required();

    auto* dot = app.add_subcommand("export-dot", "Graphviz output");
    dot->add_option("tree", o.input)->required();
    dot->add_flag("--dynamics", o.dynamics, "Draw the map as dashed edges");

    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kMalformed;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(o, in, out);
        if (ext->parsed()) return cmd_extensions(o, in, out, err);
        if (step->parsed()) return cmd_step(o, in, out, err);
        if (en->parsed()) return cmd_enumerate(o, out);
        if (re->parsed()) return cmd_realize(o, in, out, err);
        if (ex->parsed()) return cmd_extract(o, in, out, err);
        if (po->parsed()) return cmd_portals(o, in, out, err);
        if (ch->parsed()) return cmd_check(o, in, out);
        if (fib->parsed()) return cmd_gen_fib(o, out);
        if (dot->parsed()) return cmd_export_dot(o, in, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const MalformedTree& e) {
        err << "error: malformed tree: " << e.what() << "\n";
        return kMalformed;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kMalformed;
}

}  // namespace yoccoz::cli
