#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "epi/builders.hpp"
#include "epi/decision.hpp"
#include "epi/formula.hpp"
#include "epi/hilbert.hpp"
#include "epi/kripke.hpp"
#include "epi/suites.hpp"
#include "epi/topospace.hpp"
#include "epi/toposys.hpp"

namespace {

using namespace epi;

int usage_fail(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

std::optional<std::string> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// First word of the first line that is neither blank nor a '#' comment.
std::string sniff_leading_word(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') continue;
        return word;
    }
    return "";
}

std::optional<Formula> parse_or_complain(const std::string& text) {
    auto r = parse(text);
    if (!r.ok()) {
        std::cerr << "error: " << r.error().format() << "\n";
        return std::nullopt;
    }
    return r.take();
}

std::vector<std::string> split_csv(const std::string& list) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : list) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void print_world_lines(const Model& m, const Formula& f) {
    for (WorldId w = 0; w < m.frame.num_worlds; ++w)
        std::cout << w << ": " << (eval(m, w, f) ? "TRUE" : "FALSE") << "\n";
}

int run_eval(const std::string& model_path, bool seeded, std::uint64_t seed,
             std::uint32_t worlds, std::uint32_t agents_n, const std::string& vars_list,
             FrameClass cls, const Formula& f) {
    if (!model_path.empty() == seeded)
        return usage_fail("eval needs exactly one of --model and --seed");
    if (!model_path.empty()) {
        const auto text = slurp(model_path);
        if (!text) return usage_fail("cannot read " + model_path);
        auto parsed = parse_model_file(*text);
        if (!parsed.ok()) return usage_fail(model_path + ": " + parsed.error().format());
        const auto& [m, point] = parsed.value();
        if (point) {
            std::cout << (eval(m, *point, f) ? "TRUE" : "FALSE") << "\n";
        } else {
            print_world_lines(m, f);
        }
        return 0;
    }
    if (worlds < 1 || worlds > kDefaultSearchWorldCap)
        return usage_fail("--bound must be between 1 and " +
                          std::to_string(kDefaultSearchWorldCap));
    if (agents_n < 1 || agents_n > 4) return usage_fail("--agents must be between 1 and 4");
    std::vector<Agent> agents;
    for (Agent i = 1; i <= agents_n; ++i) agents.push_back(i);
    const Model m = random_model(worlds, agents, split_csv(vars_list), cls, seed);
    std::cout << model_to_text(m);
    print_world_lines(m, f);
    return 0;
}

int run_classify(const std::string& model_path) {
    const auto text = slurp(model_path);
    if (!text) return usage_fail("cannot read " + model_path);
    const std::string lead = sniff_leading_word(*text);

    if (lead == "worlds") {
        auto parsed = parse_model_file(*text);
        if (!parsed.ok()) return usage_fail(model_path + ": " + parsed.error().format());
        const Frame& fr = parsed.value().first.frame;
        std::cout << "worlds " << fr.num_worlds << "\n";
        for (const auto& [agent, rel] : fr.rel) {
            std::cout << "agent " << agent << ": reflexive="
                      << (is_reflexive(rel, fr.num_worlds) ? "yes" : "no")
                      << " transitive=" << (is_transitive(rel, fr.num_worlds) ? "yes" : "no")
                      << " weakly-directed="
                      << (is_weakly_directed(rel, fr.num_worlds) ? "yes" : "no") << "\n";
        }
        for (const FrameClass cls :
             {FrameClass::WeaklyDirectedPreorder, FrameClass::Preorder,
              FrameClass::WeaklyDirected, FrameClass::Reflexive, FrameClass::Transitive,
              FrameClass::All}) {
            if (class_check_all(fr, cls)) {
                std::cout << "class: " << frame_class_name(cls) << "\n";
                break;
            }
        }
        return 0;
    }
    if (lead == "points") {
        auto parsed = topo_from_text(*text);
        if (!parsed.ok()) return usage_fail(model_path + ": " + parsed.error().format());
        const TopoModel& t = parsed.value();
        std::cout << "points " << t.num_points << "\n";
        std::cout << "opens " << t.opens.size() << "\n";
        if (const auto why = topology_violation(t.num_points, t.opens)) {
            std::cout << "topology: violation: " << *why << "\n";
            return 1;
        }
        std::cout << "topology: ok\n";
        const Model spec = specialization_frame(t);
        std::cout << "specialization: "
                  << (class_check_all(spec.frame, FrameClass::WeaklyDirectedPreorder)
                          ? "wd-preorder"
                          : "preorder")
                  << "\n";
        return 0;
    }
    return usage_fail(model_path + ": expected a 'worlds' or 'points' file");
}

int run_decide(const std::string& logic_s, const Formula& f) {
    const auto logic = logic_from_name(logic_s);
    if (!logic)
        return usage_fail("decide handles K and S4 only; S42 claims rest on certificates "
                          "(check) and exhaustive bounds (search)");
    const Decision d = decide_valid(*logic, f);
    if (d.valid) {
        std::cout << "VALID\n";
        return 0;
    }
    std::cout << "NOT-VALID\n" << pointed_model_to_text(*d.countermodel);
    return 1;
}

int run_search(const std::string& class_s, std::uint32_t bound, const Formula& f) {
    const auto cls = frame_class_from_name(class_s);
    if (!cls) return usage_fail("unknown frame class " + class_s);
    SearchResult r;
    try {
        r = bounded_countermodel(*cls, f, bound);
    } catch (const std::invalid_argument& e) {
        return usage_fail(e.what());
    }
    if (!r.countermodel) {
        std::cout << "NONE-UP-TO " << r.bound << "\n";
        return 0;
    }
    std::cout << "COUNTERMODEL\n" << pointed_model_to_text(*r.countermodel);
    return 1;
}

int run_check(const std::string& proof_path, const std::string& logic_s) {
    const auto text = slurp(proof_path);
    if (!text) return usage_fail("cannot read " + proof_path);
    if (sniff_leading_word(*text) != "system")
        return usage_fail(proof_path + ": expected a 'system ...' certificate");

    std::istringstream ls(*text);
    std::string head;
    {
        std::string line;
        while (std::getline(ls, line)) {
            std::istringstream ws(line);
            std::string word;
            if (!(ws >> word) || word[0] == '#') continue;
            ws >> head;
            break;
        }
    }
    if (!logic_s.empty() && logic_s != head)
        return usage_fail("certificate declares system " + head + ", not " + logic_s);

    if (head == "TOPOS4") {
        auto parsed = topo_proof_from_text(*text);
        if (!parsed.ok()) return usage_fail(proof_path + ": " + parsed.error().format());
        const auto res = check_topo_proof(parsed.value());
        if (res.ok()) {
            std::cout << "OK " << render(res.value()) << "\n";
            return 0;
        }
        std::cout << "ERROR " << res.error().format() << "\n";
        return 1;
    }
    auto parsed = proof_from_text(*text);
    if (!parsed.ok()) return usage_fail(proof_path + ": " + parsed.error().format());
    const auto res = check_proof(parsed.value().first, parsed.value().second);
    if (res.ok()) {
        std::cout << "OK " << render(res.value()) << "\n";
        return 0;
    }
    std::cout << "ERROR " << res.error().format() << "\n";
    return 1;
}

int run_derive(const std::string& name) {
    const auto hsuite = bundled_theorem_suite();
    const auto tsuite = bundled_topo_suite();
    if (name.empty()) {
        for (const auto& nt : hsuite)
            std::cout << nt.name << " " << system_name(nt.system) << "\n";
        for (const auto& [tname, pr] : tsuite) {
            (void)pr;
            std::cout << tname << " TOPOS4\n";
        }
        return 0;
    }
    for (const auto& nt : hsuite) {
        if (nt.name == name) {
            std::cout << proof_to_text(nt.system, nt.proof);
            return 0;
        }
    }
    for (const auto& [tname, pr] : tsuite) {
        if (tname == name) {
            std::cout << topo_proof_to_text(pr);
            return 0;
        }
    }
    return usage_fail("no bundled theorem named " + name + " (run derive with no name to list)");
}

int run_translate(const std::string& proof_path) {
    const auto text = slurp(proof_path);
    if (!text) return usage_fail("cannot read " + proof_path);
    std::istringstream ls(*text);

    if (text->find("system TOPOS4") != std::string::npos) {
        auto parsed = topo_proof_from_text(*text);
        if (!parsed.ok()) return usage_fail(proof_path + ": " + parsed.error().format());
        try {
            std::cout << proof_to_text(System::s4(), topo_to_s4(parsed.value()));
            return 0;
        } catch (const std::invalid_argument& e) {
            std::cout << "ERROR " << e.what() << "\n";
            return 1;
        }
    }
    auto parsed = proof_from_text(*text);
    if (!parsed.ok()) return usage_fail(proof_path + ": " + parsed.error().format());
    try {
        std::cout << topo_proof_to_text(s4_to_topo(parsed.value().second));
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cout << "ERROR " << e.what() << "\n";
        return 1;
    }
}

int run_mcs(const std::string& logic_s, const std::vector<std::string>& formula_texts) {
    const auto logic = logic_from_name(logic_s);
    if (!logic) return usage_fail("mcs handles K and S4 only");
    std::vector<Formula> closure;
    for (const auto& ft : formula_texts) {
        const auto f = parse_or_complain(ft);
        if (!f) return 2;
        closure.push_back(*f);
    }
    std::vector<FiniteMcs> all;
    try {
        all = enumerate_mcs(*logic, closure);
    } catch (const std::invalid_argument& e) {
        return usage_fail(e.what());
    }
    const std::vector<Formula> base = all.empty() ? subformula_closure(closure) : all[0].base;
    std::cout << "base " << base.size() << "\n";
    for (std::size_t j = 0; j < base.size(); ++j)
        std::cout << j << ": " << render(base[j]) << "\n";
    std::cout << "count " << all.size() << "\n";
    for (std::size_t k = 0; k < all.size(); ++k) {
        std::cout << "mcs " << k << ":";
        for (const Formula& g : all[k].members()) std::cout << " " << render(g) << " ;";
        std::cout << "\n";
    }
    return 0;
}

int run_suite(const std::string& group) {
    const auto results = run_suite_group(group);
    if (!results)
        return usage_fail("unknown suite group " + group +
                          " (soundness, correspondence, equivalence, oracle, all)");
    bool all_pass = true;
    for (const SuiteResult& r : *results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"epistemic logic workbench: formulas, Kripke and topological models, "
                 "proof certificates, decision procedures"};
    app.require_subcommand(1);

    std::string formula_text;
    std::string model_path;
    std::string proof_path;
    std::string logic_s;
    std::string class_s = "wd-preorder";
    std::string vars_list = "p";
    std::string name;
    std::string group = "all";
    std::vector<std::string> formula_texts;
    std::uint64_t seed = 0;
    std::uint32_t bound = 4;
    std::uint32_t agents_n = 1;

    auto* cparse = app.add_subcommand("parse", "parse a formula, print its canonical form");
    cparse->add_option("formula", formula_text, "formula text")->required();

    auto* ceval = app.add_subcommand("eval", "evaluate a formula on a model");
    ceval->add_option("formula", formula_text, "formula text")->required();
    ceval->add_option("--model", model_path, "model file (pointed or not)");
    auto* eseed = ceval->add_option("--seed", seed, "draw a seeded random model instead");
    ceval->add_option("--bound", bound, "worlds of the random model (default 4)");
    ceval->add_option("--agents", agents_n, "agents of the random model (default 1)");
    ceval->add_option("--vars", vars_list, "variables of the random model (default p)");
    ceval->add_option("--class", class_s, "frame class of the random model");

    auto* cclassify = app.add_subcommand("classify", "report frame or topology properties");
    cclassify->add_option("--model", model_path, "worlds or points file")->required();

    auto* cdecide = app.add_subcommand("decide", "validity via the tableau (K, S4)");
    cdecide->add_option("formula", formula_text, "formula text")->required();
    cdecide->add_option("--logic", logic_s, "K or S4 (default S4)");

    auto* csearch = app.add_subcommand("search", "exhaustive bounded countermodel search");
    csearch->add_option("formula", formula_text, "formula text")->required();
    csearch->add_option("--class", class_s, "frame class (default wd-preorder)");
    csearch->add_option("--bound", bound, "max worlds (default 4)");

    auto* ccheck = app.add_subcommand("check", "verify a proof certificate");
    ccheck->add_option("--proof", proof_path, "certificate file")->required();
    ccheck->add_option("--logic", logic_s, "require this system header");

    auto* cderive = app.add_subcommand("derive", "print a bundled theorem certificate");
    cderive->add_option("name", name, "theorem name (omit to list)");

    auto* ctranslate =
        app.add_subcommand("translate", "translate a certificate between the axiomatizations");
    ctranslate->add_option("--proof", proof_path, "certificate file")->required();

    auto* cmcs = app.add_subcommand("mcs", "enumerate maximal consistent sets over a closure");
    cmcs->add_option("formulas", formula_texts, "closure formulas")->required();
    cmcs->add_option("--logic", logic_s, "K or S4 (default S4)");

    auto* csuite = app.add_subcommand("suite", "run an acceptance suite group");
    csuite->add_option("group", group, "soundness|correspondence|equivalence|oracle|all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (logic_s.empty() && (cdecide->parsed() || cmcs->parsed())) logic_s = "S4";

    try {
        if (cparse->parsed()) {
            const auto f = parse_or_complain(formula_text);
            if (!f) return 2;
            std::cout << render(*f) << "\n";
            return 0;
        }
        if (ceval->parsed()) {
            const auto f = parse_or_complain(formula_text);
            if (!f) return 2;
            const auto cls = frame_class_from_name(class_s);
            if (!cls) return usage_fail("unknown frame class " + class_s);
            return run_eval(model_path, eseed->count() > 0, seed, bound, agents_n, vars_list,
                            *cls, *f);
        }
        if (cclassify->parsed()) return run_classify(model_path);
        if (cdecide->parsed()) {
            const auto f = parse_or_complain(formula_text);
            if (!f) return 2;
            return run_decide(logic_s, *f);
        }
        if (csearch->parsed()) {
            const auto f = parse_or_complain(formula_text);
            if (!f) return 2;
            return run_search(class_s, bound, *f);
        }
        if (ccheck->parsed()) return run_check(proof_path, logic_s);
        if (cderive->parsed()) return run_derive(name);
        if (ctranslate->parsed()) return run_translate(proof_path);
        if (cmcs->parsed()) return run_mcs(logic_s, formula_texts);
        if (csuite->parsed()) return run_suite(group);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return usage_fail("no command");
}
