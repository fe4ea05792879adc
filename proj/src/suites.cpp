#include "epi/suites.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>

#include "epi/builders.hpp"
#include "epi/decision.hpp"
#include "epi/formula.hpp"
#include "epi/hilbert.hpp"
#include "epi/kripke.hpp"
#include "epi/topospace.hpp"
#include "epi/toposys.hpp"

namespace epi {

namespace {

WorldSet full_mask(std::uint32_t n) {
    return n >= 64 ? ~WorldSet{0} : (WorldSet{1} << n) - 1;
}

// Counts checks and keeps the first failure; suites always run to the end.
class Tally {
public:
    explicit Tally(std::string name) : name_(std::move(name)) {
        start_ = std::chrono::steady_clock::now();
    }

    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok) {
            ++failures_;
            if (first_.empty()) first_ = what;
        }
    }

    long elapsed_ms() const {
        return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start_)
                                     .count());
    }

    SuiteResult finish(long budget_ms = 0) {
        const long ms = elapsed_ms();
        if (budget_ms > 0 && ms > budget_ms) {
            ++failures_;
            if (first_.empty())
                first_ = "over the " + std::to_string(budget_ms) + " ms budget";
        }
        std::string detail =
            std::to_string(checks_) + " checks, " + std::to_string(failures_) + " failures";
        if (failures_ > 0) detail += " (first: " + first_ + ")";
        return SuiteResult{name_, failures_ == 0, std::move(detail), ms};
    }

private:
    std::string name_;
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::string first_;
    std::chrono::steady_clock::time_point start_;
};

// True everywhere on every cls frame over the formula's own agents and
// variables, exhaustively for 1..max_worlds worlds.
void expect_valid_exhaustive(Tally& t, const Formula& f, FrameClass cls,
                             std::uint32_t max_worlds, const std::string& label) {
    const CompiledFormula cf(f);
    std::vector<WorldSet> scratch(cf.op_count());
    std::vector<const WorldSet*> rows(cf.agents().size());
    std::vector<WorldSet> vals(cf.vars().size());
    for (std::uint32_t n = 1; n <= max_worlds; ++n) {
        const WorldSet full = full_mask(n);
        FrameEnumerator frames(n, cf.agents(), cls);
        while (auto fr = frames.next()) {
            for (std::size_t k = 0; k < cf.agents().size(); ++k)
                rows[k] = fr->rel.at(cf.agents()[k]).succ.data();
            const std::uint64_t vtotal = std::uint64_t{1}
                                         << (cf.vars().size() * static_cast<std::uint64_t>(n));
            for (std::uint64_t v = 0; v < vtotal; ++v) {
                for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = (v >> (j * n)) & full;
                t.expect(cf.truth_set(n, rows.data(), vals.data(), scratch.data()) == full,
                         label);
            }
        }
    }
}

}  // namespace

SuiteResult run_s42_soundness() {
    Tally t("s42-soundness");
    const auto suite = bundled_theorem_suite();
    t.expect(suite.size() >= 30, "bundled suite holds fewer than 30 theorems");

    std::vector<Formula> finals;
    for (const auto& nt : suite) {
        const auto fin = check_proof(System::s42(), nt.proof);
        t.expect(fin.ok(), nt.name + ": kernel rejects the proof");
        if (fin.ok()) finals.push_back(fin.value());
    }

    for (std::size_t i = 0; i < finals.size(); ++i) {
        const std::string label = suite[i].name + ": refuted on a wd-preorder model";
        expect_valid_exhaustive(t, finals[i], FrameClass::WeaklyDirectedPreorder, 3, label);
    }

    for (std::size_t r = 0; r < 1000; ++r) {
        const std::size_t pick = r % finals.size();
        const CompiledFormula cf(finals[pick]);
        const Model m =
            random_model(1 + static_cast<std::uint32_t>(r % 4), cf.agents(), cf.vars(),
                         FrameClass::WeaklyDirectedPreorder, 0x42c0ffeeULL ^ r);
        t.expect(cf.truth_set(m) == full_mask(m.frame.num_worlds),
                 suite[pick].name + ": refuted on a random wd-preorder model");
    }
    return t.finish(120000);
}

SuiteResult run_correspondence() {
    Tally t("correspondence");
    std::size_t preorders = 0;
    for (std::uint64_t bits = 0; bits < 512; ++bits) {
        const Relation r = decode_relation(bits, 3);
        if (is_reflexive(r, 3) && is_transitive(r, 3)) ++preorders;
    }
    t.expect(preorders == 29, "brute-force preorder count on 3 worlds is not 29");
    t.expect(relation_catalog(3, FrameClass::Preorder).size() == 29,
             "catalog disagrees with the brute-force count");

    for (const std::uint64_t bits : relation_catalog(3, FrameClass::Preorder)) {
        Frame fr;
        fr.num_worlds = 3;
        fr.rel[1] = decode_relation(bits, 3);
        t.expect(validates_schema(fr, SchemaName::Ax2, 1) ==
                     class_check(fr, 1, FrameClass::WeaklyDirected),
                 "Ax2 validity vs weak directedness at relation " + std::to_string(bits));
    }
    for (std::uint64_t bits = 0; bits < 512; ++bits) {
        Frame fr;
        fr.num_worlds = 3;
        fr.rel[1] = decode_relation(bits, 3);
        t.expect(validates_schema(fr, SchemaName::AxT, 1) == is_reflexive(fr.rel[1], 3),
                 "AxT validity vs reflexivity at relation " + std::to_string(bits));
        t.expect(validates_schema(fr, SchemaName::Ax4, 1) == is_transitive(fr.rel[1], 3),
                 "Ax4 validity vs transitivity at relation " + std::to_string(bits));
    }
    return t.finish(60000);
}

SuiteResult run_ax2_witnesses() {
    Tally t("ax2-witnesses");
    const Formula ax2 = instantiate_schema(SchemaName::Ax2, 1, Formula::var("p"));

    const SearchResult fork = bounded_countermodel(FrameClass::Preorder, ax2, 3);
    t.expect(fork.countermodel.has_value(), "no preorder countermodel to the .2 instance");
    if (fork.countermodel) {
        const auto& pm = *fork.countermodel;
        t.expect(!eval(pm.model, pm.world, ax2), "the reported fork witness fails to refute");
        t.expect(pm.model.frame.num_worlds == 3 &&
                     encode_relation(pm.model.frame.rel.at(1), 3) == 279,
                 "first refuting preorder is not the fork relation");
        t.expect(!class_check(pm.model.frame, 1, FrameClass::WeaklyDirected),
                 "fork witness is weakly directed after all");
    }

    const SearchResult none =
        bounded_countermodel(FrameClass::WeaklyDirectedPreorder, ax2, 4);
    t.expect(!none.countermodel && none.bound == 4,
             ".2 instance refuted inside the weakly directed class");

    const auto sep = parse("L1 p -> K1 L1 p");
    t.expect(sep.ok(), "separator formula fails to parse");
    if (sep.ok()) {
        const SearchResult got =
            bounded_countermodel(FrameClass::WeaklyDirectedPreorder, sep.value(), 2);
        t.expect(got.countermodel.has_value(), "no wd-preorder countermodel to the separator");
        if (got.countermodel)
            t.expect(!eval(got.countermodel->model, got.countermodel->world, sep.value()),
                     "the separator witness fails to refute");
    }
    return t.finish();
}

SuiteResult run_axiomatization_equivalence() {
    Tally t("axiomatization-equivalence");
    std::size_t s4_suite = 0;
    for (const auto& nt : bundled_theorem_suite()) {
        if (!check_proof(System::s4(), nt.proof).ok()) continue;  // needs .2, out of scope here
        ++s4_suite;
        try {
            const TopoProof tp = s4_to_topo(nt.proof);
            const auto rr = check_topo_proof(tp);
            t.expect(rr.ok() && rr.value() == nt.proof.steps.back().formula,
                     nt.name + ": forward translation breaks");
        } catch (const std::exception&) {
            t.expect(false, nt.name + ": forward translation throws");
        }
    }
    t.expect(s4_suite >= 20, "fewer than 20 S4 theorems in the bundled suite");

    const auto topo_suite = bundled_topo_suite();
    t.expect(topo_suite.size() >= 20, "fewer than 20 native topo theorems");
    for (const auto& [name, pr] : topo_suite) {
        try {
            const Proof back = topo_to_s4(pr);
            const auto rr = check_proof(System::s4(), back);
            t.expect(rr.ok() && rr.value() == pr.steps.back().formula,
                     name + ": backward translation breaks");
        } catch (const std::exception&) {
            t.expect(false, name + ": backward translation throws");
        }
    }

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        try {
            const Proof hp = random_s4_proof(seed, 12);
            const TopoProof tp = s4_to_topo(hp);
            const auto rr = check_topo_proof(tp);
            t.expect(rr.ok() && rr.value() == hp.steps.back().formula,
                     "random forward translation breaks at seed " + std::to_string(seed));
        } catch (const std::exception&) {
            t.expect(false, "random forward translation throws at seed " + std::to_string(seed));
        }
        try {
            const TopoProof tp = random_topo_proof(seed, 12);
            const Proof back = topo_to_s4(tp);
            const auto rr = check_proof(System::s4(), back);
            t.expect(rr.ok() && rr.value() == tp.steps.back().formula,
                     "random backward translation breaks at seed " + std::to_string(seed));
        } catch (const std::exception&) {
            t.expect(false, "random backward translation throws at seed " + std::to_string(seed));
        }
    }
    return t.finish();
}

SuiteResult run_derived_rule_builders() {
    Tally t("derived-rule-builders");
    std::mt19937_64 eng(2026);
    const std::vector<std::string> vs = {"p", "q"};
    const std::vector<Agent> ags = {1, 2};
    const System sys = System::k();

    const auto draw = [&] { return random_formula(eng, 3, vs, ags); };
    const auto draw_list = [&](std::size_t len) {
        std::vector<Formula> out;
        for (std::size_t j = 0; j < len; ++j) out.push_back(draw());
        return out;
    };
    // imply(psis, member) must survive the tautology atom cap; redraw on blowup
    const auto draw_taut_list = [&](std::size_t len, std::vector<Formula>& psis, Formula& phi) {
        for (int tries = 0; tries < 100; ++tries) {
            psis = draw_list(len);
            phi = psis[eng() % psis.size()];
            try {
                if (is_tautology(imply(psis, phi))) return true;
            } catch (const TooManyAtoms&) {
            }
        }
        return false;
    };

    for (int round = 0; round < 100; ++round) {
        const Agent i = ags[eng() % ags.size()];
        const std::size_t len = 1 + eng() % 4;

        std::vector<Formula> psis;
        Formula phi;
        t.expect(draw_taut_list(len, psis, phi), "no tautological imply instance in 100 draws");
        {
            ProofBuilder sb;
            sb.taut(imply(psis, phi));
            const Proof out = prove_imply_conjunct_equiv(
                sys, psis, phi, ConvertDirection::ImplyToConjunct, sb.build());
            const auto rr = check_proof(sys, out);
            t.expect(rr.ok() && rr.value() == Formula::imp(conjunct(psis), phi),
                     "imply->conjunct conversion breaks");
        }
        {
            ProofBuilder sb;
            sb.taut(Formula::imp(conjunct(psis), phi));
            const Proof out = prove_imply_conjunct_equiv(
                sys, psis, phi, ConvertDirection::ConjunctToImply, sb.build());
            const auto rr = check_proof(sys, out);
            t.expect(rr.ok() && rr.value() == imply(psis, phi),
                     "conjunct->imply conversion breaks");
        }
        {
            const auto psis2 = draw_list(1 + eng() % 4);
            const auto [fwd, bwd] = prove_K_over_conjunct(sys, i, psis2);
            const Formula boxed = Formula::know(i, conjunct(psis2));
            std::vector<Formula> each;
            for (const Formula& g : psis2) each.push_back(Formula::know(i, g));
            const auto rf = check_proof(sys, fwd);
            const auto rb = check_proof(sys, bwd);
            t.expect(rf.ok() && rf.value() == Formula::imp(boxed, conjunct(each)),
                     "K-over-conjunct forward breaks");
            t.expect(rb.ok() && rb.value() == Formula::imp(conjunct(each), boxed),
                     "K-over-conjunct backward breaks");
        }
        {
            const Formula a = draw(), b = draw(), c = draw();
            const Proof out = prove_K_conj_imply_factor(sys, i, a, b, c);
            const Formula want = Formula::imp(
                Formula::imp(Formula::conj(Formula::know(i, a), Formula::know(i, b)), c),
                Formula::imp(Formula::know(i, Formula::conj(a, b)), c));
            const auto rr = check_proof(sys, out);
            t.expect(rr.ok() && rr.value() == want, "factoring lemma breaks");
        }
        {
            const Formula a = draw(), b = draw();
            const Proof out = prove_K_thm(sys, i, a, b);
            const Formula want =
                Formula::imp(Formula::conj(Formula::know(i, a), Formula::poss(i, b)),
                             Formula::poss(i, Formula::conj(a, b)));
            const auto rr = check_proof(sys, out);
            t.expect(rr.ok() && rr.value() == want, "K_thm breaks");
        }
    }
    return t.finish();
}

SuiteResult run_tableau_oracle() {
    Tally t("tableau-oracle");
    std::mt19937_64 eng(42);
    const std::vector<std::string> vs = {"p", "q"};
    const std::vector<Agent> ags = {1, 2};
    std::size_t sats = 0;
    for (int round = 0; round < 500; ++round) {
        const Formula f = random_formula(eng, 4, vs, ags);
        const TableauResult r = tableau_sat(Logic::S4, f);
        const SearchResult s = bounded_countermodel(FrameClass::Preorder, Formula::neg(f), 4);
        if (r.sat) {
            ++sats;
            t.expect(r.witness && eval(r.witness->model, r.witness->world, f),
                     "sat witness fails its formula");
            t.expect(r.witness &&
                         class_check_all(r.witness->model.frame, FrameClass::Preorder),
                     "sat witness leaves the preorder class");
            t.expect(s.countermodel.has_value(), "bounded search misses a satisfiable formula");
        } else {
            t.expect(!s.countermodel,
                     "bounded search finds a model the tableau called unsatisfiable");
        }
    }
    t.expect(sats > 0 && sats < 500, "degenerate random draw");
    return t.finish();
}

SuiteResult run_finite_mcs() {
    Tally t("finite-mcs");
    const Formula p = Formula::var("p");
    const Formula q = Formula::var("q");
    const std::vector<std::vector<Formula>> closures = {
        {p},
        {p, q},
        {Formula::conj(p, q)},
        {Formula::disj(p, q), Formula::neg(p)},
        {Formula::know(1, p), p},
        {Formula::know(1, Formula::imp(p, q)), Formula::know(1, q)},
        {Formula::bel(1, p)},
        {instantiate_schema(SchemaName::Ax4, 1, p)},
        {Formula::conj(p, Formula::neg(Formula::know(1, p)))},
        {instantiate_schema(SchemaName::Ax2, 1, p)},
    };

    for (const Logic logic : {Logic::K, Logic::S4}) {
        for (std::size_t ci = 0; ci < closures.size(); ++ci) {
            const std::string where =
                std::string(logic_name(logic)) + " closure " + std::to_string(ci);
            const auto all = enumerate_mcs(logic, closures[ci]);
            t.expect(!all.empty(), where + ": no consistent selection at all");
            for (const FiniteMcs& m : all) {
                for (std::size_t j = 0; j < m.base.size(); ++j)
                    t.expect(m.contains(m.base[j]) != m.contains(Formula::neg(m.base[j])),
                             where + ": exactly-one-of fails");
                t.expect(consistent(logic, m.members()), where + ": inconsistent member set");
                for (std::size_t j = 0; j < m.base.size(); ++j) {
                    if (m.base[j].kind() != Kind::And) continue;
                    if (m.contains(m.base[j].lhs()) && m.contains(m.base[j].rhs()))
                        t.expect(m.contains(m.base[j]), where + ": conjunction closure fails");
                }
                const std::vector<Formula> members = m.members();
                const FiniteMcs one = extend_mcs(logic, {members[0]}, closures[ci]);
                t.expect(one.contains(members[0]), where + ": extension drops its seed");
                const FiniteMcs pinned = extend_mcs(logic, members, closures[ci]);
                t.expect(pinned.negbits == m.negbits && pinned.base == m.base,
                         where + ": full pin does not reproduce the set");
            }
        }
    }
    return t.finish();
}

SuiteResult run_topological_bridge() {
    Tally t("topological-bridge");
    const Formula p = Formula::var("p");

    // Connective-by-connective agreement carrier: interior equals the
    // specialization box on every subset, so both semantics interpret Know
    // identically and the shared set operations do the rest at any depth.
    for (std::uint32_t n = 1; n <= 4; ++n) {
        for (const auto& family : topology_catalog(n)) {
            TopoModel tm;
            tm.num_points = n;
            tm.opens.insert(family.begin(), family.end());
            const Model spec = specialization_frame(tm);
            const auto& succ = spec.frame.rel.at(0).succ;
            for (PointSet s = 0; s < (PointSet{1} << n); ++s) {
                PointSet box = 0;
                for (std::uint32_t w = 0; w < n; ++w)
                    if ((succ[w] & ~s) == 0) box |= PointSet{1} << w;
                t.expect(interior(tm, s) == box,
                         "interior vs specialization box, " + std::to_string(n) + " points");
            }
        }
    }

    // Exhaustive depth <= 2 formulas over one variable and the single box.
    std::vector<Formula> formulas = {Formula::bottom(), p};
    {
        std::set<Formula> seen(formulas.begin(), formulas.end());
        const auto grow = [&seen, &formulas] {
            const std::vector<Formula> layer = formulas;
            for (const Formula& a : layer) {
                for (const Formula& b : layer) {
                    for (const Formula& f :
                         {Formula::disj(a, b), Formula::conj(a, b), Formula::imp(a, b)}) {
                        if (seen.insert(f).second) formulas.push_back(f);
                    }
                }
                const Formula k = Formula::know(0, a);
                if (seen.insert(k).second) formulas.push_back(k);
            }
        };
        grow();
        grow();
    }
    std::vector<CompiledFormula> compiled;
    compiled.reserve(formulas.size());
    for (const Formula& f : formulas) compiled.emplace_back(f);

    std::size_t disagreements = 0;
    for (std::uint32_t n = 1; n <= 4; ++n) {
        const WorldSet full = full_mask(n);
        for (const auto& family : topology_catalog(n)) {
            TopoModel tm;
            tm.num_points = n;
            tm.opens.insert(family.begin(), family.end());
            const Model spec0 = specialization_frame(tm);
            const WorldSet* row = spec0.frame.rel.at(0).succ.data();
            for (PointSet val = 0; val <= full; ++val) {
                tm.valuation["p"] = val;
                for (std::size_t fi = 0; fi < formulas.size(); ++fi) {
                    const CompiledFormula& cf = compiled[fi];
                    std::vector<WorldSet> scratch(cf.op_count());
                    const WorldSet vals[1] = {val};
                    const WorldSet kripke =
                        cf.truth_set(n, &row, cf.vars().empty() ? nullptr : vals,
                                     scratch.data());
                    if (topo_truth_set(tm, formulas[fi]) != kripke) ++disagreements;
                }
            }
        }
    }
    t.expect(disagreements == 0, std::to_string(disagreements) +
                                     " depth-2 disagreements between the semantics");

    // Random depth <= 4 formulas, all topologies on up to 3 points.
    std::mt19937_64 eng(9);
    for (int round = 0; round < 1000; ++round) {
        const Formula f = random_formula(eng, 4, {"p"}, {0});
        bool agree = true;
        for (std::uint32_t n = 1; n <= 3 && agree; ++n) {
            for (const auto& family : topology_catalog(n)) {
                TopoModel tm;
                tm.num_points = n;
                tm.opens.insert(family.begin(), family.end());
                for (PointSet val = 0; val <= full_mask(n); ++val) {
                    tm.valuation["p"] = val;
                    const Model spec = specialization_frame(tm);
                    for (std::uint32_t w = 0; w < n; ++w) {
                        if (topo_eval(tm, w, f) != eval(spec, w, f)) {
                            agree = false;
                            break;
                        }
                    }
                    if (!agree) break;
                }
                if (!agree) break;
            }
        }
        t.expect(agree, "random depth-4 disagreement at round " + std::to_string(round));
    }
    return t.finish();
}

SuiteResult run_parser_roundtrip() {
    Tally t("parser-roundtrip");
    std::mt19937_64 eng(7);
    for (int round = 0; round < 1000; ++round) {
        const Formula f = random_formula(eng, 5, {"p", "q", "r"}, {1, 2, 3});
        const auto back = parse(render(f));
        t.expect(back.ok() && back.value() == f,
                 "round-trip breaks on " + render(f));
    }
    return t.finish();
}

std::vector<SuiteResult> run_all_suites() {
    return {run_s42_soundness(),      run_correspondence(),
            run_ax2_witnesses(),      run_axiomatization_equivalence(),
            run_derived_rule_builders(), run_tableau_oracle(),
            run_finite_mcs(),         run_topological_bridge(),
            run_parser_roundtrip()};
}

std::optional<std::vector<SuiteResult>> run_suite_group(std::string_view group) {
    if (group == "all") return run_all_suites();
    if (group == "soundness") return std::vector<SuiteResult>{run_s42_soundness()};
    if (group == "correspondence")
        return std::vector<SuiteResult>{run_correspondence(), run_ax2_witnesses()};
    if (group == "equivalence")
        return std::vector<SuiteResult>{run_axiomatization_equivalence(),
                                        run_derived_rule_builders()};
    if (group == "oracle")
        return std::vector<SuiteResult>{run_tableau_oracle(), run_finite_mcs(),
                                        run_topological_bridge(), run_parser_roundtrip()};
    return std::nullopt;
}

}  // namespace epi
