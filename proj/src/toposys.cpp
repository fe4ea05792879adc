#include "epi/toposys.hpp"

#include "epi/builders.hpp"
#include "text_lines.hpp"

#include <random>
#include <stdexcept>

namespace epi {

TopoStep TopoStep::taut(Formula f) {
    TopoStep st;
    st.formula = std::move(f);
    st.rule = TopoRuleKind::Taut;
    return st;
}

TopoStep TopoStep::axiom(TopoRuleKind rule, Formula f) {
    if (rule != TopoRuleKind::AxN && rule != TopoRuleKind::AxR && rule != TopoRuleKind::AxT &&
        rule != TopoRuleKind::Ax4)
        throw std::logic_error("TopoStep::axiom: not an axiom rule");
    TopoStep st;
    st.formula = std::move(f);
    st.rule = rule;
    return st;
}

TopoStep TopoStep::mp(Formula f, std::size_t j, std::size_t k) {
    TopoStep st;
    st.formula = std::move(f);
    st.rule = TopoRuleKind::Mp;
    st.j = j;
    st.k = k;
    return st;
}

TopoStep TopoStep::rm(Formula f, Agent i, std::size_t j) {
    TopoStep st;
    st.formula = std::move(f);
    st.rule = TopoRuleKind::Rm;
    st.agent = i;
    st.j = j;
    return st;
}

namespace {

bool matches_ax_n(const Formula& f) {
    return f.kind() == Kind::Know && f.body() == Formula::top();
}

std::string_view topo_rule_name(TopoRuleKind r) {
    switch (r) {
        case TopoRuleKind::Taut: return "TAUT";
        case TopoRuleKind::AxN: return "AXN";
        case TopoRuleKind::AxR: return "AXR";
        case TopoRuleKind::AxT: return "AXT";
        case TopoRuleKind::Ax4: return "AX4";
        case TopoRuleKind::Mp: return "MP";
        case TopoRuleKind::Rm: return "RM";
    }
    return "?";
}

}  // namespace

Expected<Formula, CheckError> check_topo_proof(const TopoProof& pr) {
    if (pr.steps.empty()) return CheckError{0, "empty proof"};
    for (std::size_t i = 0; i < pr.steps.size(); ++i) {
        const TopoStep& st = pr.steps[i];
        const std::size_t n = i + 1;
        switch (st.rule) {
            case TopoRuleKind::Taut: {
                bool ok = false;
                try {
                    ok = is_tautology(st.formula);
                } catch (const TooManyAtoms& e) {
                    return CheckError{n, e.what()};
                }
                if (!ok) return CheckError{n, "not a propositional tautology"};
                break;
            }
            case TopoRuleKind::AxN:
                if (!matches_ax_n(st.formula))
                    return CheckError{n, "formula is not K_i true"};
                break;
            case TopoRuleKind::AxR:
                if (!match_schema(SchemaName::AxR, st.formula))
                    return CheckError{n, "formula does not match the box/meet exchange"};
                break;
            case TopoRuleKind::AxT:
                if (!match_schema(SchemaName::AxT, st.formula))
                    return CheckError{n, "formula does not match schema AxT"};
                break;
            case TopoRuleKind::Ax4:
                if (!match_schema(SchemaName::Ax4, st.formula))
                    return CheckError{n, "formula does not match schema Ax4"};
                break;
            case TopoRuleKind::Mp: {
                if (st.j < 1 || st.j >= n || st.k < 1 || st.k >= n)
                    return CheckError{n, "MP references must point at strictly earlier steps"};
                const Formula& maj = pr.steps[st.j - 1].formula;
                if (maj.kind() != Kind::Imp)
                    return CheckError{n, "step " + std::to_string(st.j) + " is not an implication"};
                if (!(maj.lhs() == pr.steps[st.k - 1].formula))
                    return CheckError{n, "step " + std::to_string(st.k) +
                                             " is not the antecedent of step " +
                                             std::to_string(st.j)};
                if (!(maj.rhs() == st.formula))
                    return CheckError{n, "formula is not the consequent of step " +
                                             std::to_string(st.j)};
                break;
            }
            case TopoRuleKind::Rm: {
                if (st.j < 1 || st.j >= n)
                    return CheckError{n, "RM reference must point at a strictly earlier step"};
                const Formula& prem = pr.steps[st.j - 1].formula;
                if (prem.kind() != Kind::Imp)
                    return CheckError{n, "step " + std::to_string(st.j) + " is not an implication"};
                const Formula want = Formula::imp(Formula::know(st.agent, prem.lhs()),
                                                  Formula::know(st.agent, prem.rhs()));
                if (!(st.formula == want))
                    return CheckError{n, "formula is not the RM image of step " +
                                             std::to_string(st.j)};
                break;
            }
        }
    }
    return pr.steps.back().formula;
}

// ---- builder ---------------------------------------------------------------------

std::size_t TopoProofBuilder::push(TopoStep st) {
    steps_.push_back(std::move(st));
    return steps_.size();
}

std::size_t TopoProofBuilder::taut(Formula f) { return push(TopoStep::taut(std::move(f))); }

std::size_t TopoProofBuilder::ax_n(Agent i) {
    return push(TopoStep::axiom(TopoRuleKind::AxN, Formula::know(i, Formula::top())));
}

std::size_t TopoProofBuilder::ax_r(Agent i, const Formula& phi, const Formula& psi) {
    return push(TopoStep::axiom(TopoRuleKind::AxR, instantiate_schema(SchemaName::AxR, i, phi, psi)));
}

std::size_t TopoProofBuilder::ax_t(Agent i, const Formula& phi) {
    return push(TopoStep::axiom(TopoRuleKind::AxT, instantiate_schema(SchemaName::AxT, i, phi)));
}

std::size_t TopoProofBuilder::ax_4(Agent i, const Formula& phi) {
    return push(TopoStep::axiom(TopoRuleKind::Ax4, instantiate_schema(SchemaName::Ax4, i, phi)));
}

std::size_t TopoProofBuilder::axiom_instance(TopoRuleKind rule, Formula instance) {
    bool ok = false;
    switch (rule) {
        case TopoRuleKind::AxN: ok = matches_ax_n(instance); break;
        case TopoRuleKind::AxR: ok = match_schema(SchemaName::AxR, instance).has_value(); break;
        case TopoRuleKind::AxT: ok = match_schema(SchemaName::AxT, instance).has_value(); break;
        case TopoRuleKind::Ax4: ok = match_schema(SchemaName::Ax4, instance).has_value(); break;
        default: break;
    }
    if (!ok) throw std::logic_error("axiom_instance: formula does not match the rule");
    return push(TopoStep::axiom(rule, std::move(instance)));
}

std::size_t TopoProofBuilder::mp(std::size_t imp_step, std::size_t ant_step) {
    const Formula& maj = formula(imp_step);
    if (maj.kind() != Kind::Imp || !(maj.lhs() == formula(ant_step)))
        throw std::logic_error("mp: steps do not fit modus ponens");
    return push(TopoStep::mp(maj.rhs(), imp_step, ant_step));
}

std::size_t TopoProofBuilder::rm(Agent i, std::size_t imp_step) {
    const Formula& prem = formula(imp_step);
    if (prem.kind() != Kind::Imp) throw std::logic_error("rm: step is not an implication");
    return push(TopoStep::rm(
        Formula::imp(Formula::know(i, prem.lhs()), Formula::know(i, prem.rhs())), i, imp_step));
}

std::size_t TopoProofBuilder::splice(const TopoProof& pr) {
    if (pr.steps.empty()) throw std::logic_error("splice: empty proof");
    const std::size_t offset = steps_.size();
    for (TopoStep st : pr.steps) {
        if (st.rule == TopoRuleKind::Mp) {
            st.j += offset;
            st.k += offset;
        } else if (st.rule == TopoRuleKind::Rm) {
            st.j += offset;
        }
        steps_.push_back(std::move(st));
    }
    return steps_.size();
}

const Formula& TopoProofBuilder::formula(std::size_t step) const {
    if (step < 1 || step > steps_.size()) throw std::logic_error("formula: bad step index");
    return steps_[step - 1].formula;
}

// ---- derivations ------------------------------------------------------------------

namespace {

std::size_t topo_chain(TopoProofBuilder& b, std::size_t ab, std::size_t bc) {
    const Formula fab = b.formula(ab);
    const Formula fbc = b.formula(bc);
    if (fab.kind() != Kind::Imp || fbc.kind() != Kind::Imp || !(fab.rhs() == fbc.lhs()))
        throw std::logic_error("topo_chain: steps do not compose");
    const std::size_t t =
        b.taut(Formula::imp(fab, Formula::imp(fbc, Formula::imp(fab.lhs(), fbc.rhs()))));
    return b.mp(b.mp(t, ab), bc);
}

TopoProof checked_topo(const TopoProof& pr) {
    auto r = check_topo_proof(pr);
    if (!r.ok()) throw std::logic_error("builder produced a broken topo proof: " + r.error().format());
    return pr;
}

}  // namespace

TopoProof prove_axiom_K_topo(Agent i, const Formula& phi, const Formula& psi) {
    TopoProofBuilder b;
    const Formula step = Formula::imp(phi, psi);
    const Formula packed = Formula::conj(phi, step);
    const std::size_t t1 = b.taut(Formula::imp(packed, psi));
    const std::size_t r = b.rm(i, t1);  // K(phi & (phi->psi)) -> K psi
    const std::size_t ar = b.ax_r(i, phi, step);
    const Formula bwd = b.formula(ar).rhs();  // (K phi & K(phi->psi)) -> K(phi & (phi->psi))
    const std::size_t t2 = b.taut(Formula::imp(b.formula(ar), bwd));
    const std::size_t m = b.mp(t2, ar);
    topo_chain(b, m, r);
    return checked_topo(b.build());
}

TopoProof prove_nec_topo(Agent i, const TopoProof& pr) {
    auto fin = check_topo_proof(pr);
    if (!fin.ok())
        throw std::invalid_argument("source proof does not check: " + fin.error().format());
    TopoProofBuilder b;
    const std::size_t s = b.splice(pr);
    const Formula phi = fin.value();
    const std::size_t t = b.taut(Formula::imp(phi, Formula::imp(Formula::top(), phi)));
    const std::size_t m = b.mp(t, s);     // true -> phi
    const std::size_t r = b.rm(i, m);     // K true -> K phi
    const std::size_t an = b.ax_n(i);
    b.mp(r, an);
    return checked_topo(b.build());
}

// ---- translations -----------------------------------------------------------------

TopoProof s4_to_topo(const Proof& pr) {
    {
        auto fin = check_proof(System::s4(), pr);
        if (!fin.ok())
            throw std::invalid_argument("input does not check in S4: " + fin.error().format());
    }
    TopoProofBuilder b;
    std::vector<std::size_t> remap(pr.steps.size() + 1, 0);
    for (std::size_t n = 1; n <= pr.steps.size(); ++n) {
        const Step& st = pr.steps[n - 1];
        switch (st.rule) {
            case RuleKind::Taut:
                remap[n] = b.taut(st.formula);
                break;
            case RuleKind::Axiom: {
                if (st.schema == SchemaName::AxT || st.schema == SchemaName::Ax4) {
                    remap[n] = b.axiom_instance(
                        st.schema == SchemaName::AxT ? TopoRuleKind::AxT : TopoRuleKind::Ax4,
                        st.formula);
                    break;
                }
                // AxK: inline the Taut+RM+AxR derivation, then commute the
                // conjunction to the kernel's (K(phi->psi) & K phi) shape.
                const auto inst = match_schema(SchemaName::AxK, st.formula);
                if (!inst) throw std::invalid_argument("unsupported schema in an S4 proof");
                const std::size_t kp =
                    b.splice(prove_axiom_K_topo(inst->agent, inst->phi, inst->psi));
                const std::size_t t = b.taut(Formula::imp(b.formula(kp), st.formula));
                remap[n] = b.mp(t, kp);
                break;
            }
            case RuleKind::Mp:
                remap[n] = b.mp(remap[st.j], remap[st.k]);
                break;
            case RuleKind::Nec: {
                const Formula& phi = b.formula(remap[st.j]);
                const std::size_t t =
                    b.taut(Formula::imp(phi, Formula::imp(Formula::top(), phi)));
                const std::size_t m = b.mp(t, remap[st.j]);
                const std::size_t r = b.rm(st.agent, m);
                const std::size_t an = b.ax_n(st.agent);
                remap[n] = b.mp(r, an);
                break;
            }
        }
    }
    return checked_topo(b.build());
}

Proof topo_to_s4(const TopoProof& pr) {
    {
        auto fin = check_topo_proof(pr);
        if (!fin.ok())
            throw std::invalid_argument("input does not check in topoS4: " + fin.error().format());
    }
    ProofBuilder b;
    std::vector<std::size_t> remap(pr.steps.size() + 1, 0);
    for (std::size_t n = 1; n <= pr.steps.size(); ++n) {
        const TopoStep& st = pr.steps[n - 1];
        switch (st.rule) {
            case TopoRuleKind::Taut:
                remap[n] = b.taut(st.formula);
                break;
            case TopoRuleKind::AxT:
                remap[n] = b.axiom_instance(SchemaName::AxT, st.formula);
                break;
            case TopoRuleKind::Ax4:
                remap[n] = b.axiom_instance(SchemaName::Ax4, st.formula);
                break;
            case TopoRuleKind::AxN: {
                const std::size_t t = b.taut(Formula::top());
                remap[n] = b.nec(st.formula.agent(), t);
                break;
            }
            case TopoRuleKind::AxR: {
                const auto inst = match_schema(SchemaName::AxR, st.formula);
                if (!inst) throw std::invalid_argument("malformed AxR step");
                const std::size_t fwd = derive_box_over_and(b, inst->agent, inst->phi, inst->psi);
                const std::size_t bwd = derive_box_conj_intro(b, inst->agent, inst->phi, inst->psi);
                const std::size_t t = b.taut(Formula::imp(
                    b.formula(fwd), Formula::imp(b.formula(bwd), st.formula)));
                remap[n] = b.mp(b.mp(t, fwd), bwd);
                break;
            }
            case TopoRuleKind::Mp:
                remap[n] = b.mp(remap[st.j], remap[st.k]);
                break;
            case TopoRuleKind::Rm: {
                const Formula prem = b.formula(remap[st.j]);
                const std::size_t nn = b.nec(st.agent, remap[st.j]);
                const std::size_t ik = derive_impl_k(b, st.agent, prem.lhs(), prem.rhs());
                remap[n] = b.mp(ik, nn);
                break;
            }
        }
    }
    Proof out = b.build();
    auto r = check_proof(System::s4(), out);
    if (!r.ok()) throw std::logic_error("translation produced a broken proof: " + r.error().format());
    return out;
}

// ---- stock theorems and random proofs ------------------------------------------------

std::vector<std::pair<std::string, TopoProof>> bundled_topo_suite() {
    const Formula p = Formula::var("p");
    const Formula q = Formula::var("q");
    std::vector<std::pair<std::string, TopoProof>> out;
    const auto add = [&out](std::string name, TopoProof pr) {
        out.emplace_back(std::move(name), std::move(pr));
    };

    {
        TopoProofBuilder b;
        b.ax_n(1);
        add("axn", b.build());
    }
    {
        TopoProofBuilder b;
        b.ax_n(2);
        add("axn-agent2", b.build());
    }
    {
        TopoProofBuilder b;
        b.ax_r(1, p, q);
        add("axr", b.build());
    }
    {
        TopoProofBuilder b;
        b.ax_r(1, Formula::know(1, p), q);
        add("axr-nested", b.build());
    }
    {
        TopoProofBuilder b;
        b.ax_r(1, p, p);
        add("axr-diagonal", b.build());
    }
    {
        TopoProofBuilder b;
        b.ax_t(1, p);
        add("axt", b.build());
    }
    {
        TopoProofBuilder b;
        b.ax_t(1, Formula::imp(p, q));
        add("axt-imp", b.build());
    }
    {
        TopoProofBuilder b;
        b.ax_4(1, p);
        add("ax4", b.build());
    }
    {
        TopoProofBuilder b;
        b.ax_4(1, Formula::conj(p, q));
        add("ax4-conj", b.build());
    }
    {
        TopoProofBuilder b;
        b.taut(Formula::top());
        add("taut-top", b.build());
    }
    {
        TopoProofBuilder b;
        b.taut(Formula::disj(p, Formula::neg(p)));
        add("taut-excluded-middle", b.build());
    }
    {
        TopoProofBuilder b;
        b.rm(1, b.taut(Formula::imp(p, p)));
        add("rm-identity", b.build());
    }
    {
        TopoProofBuilder b;
        b.rm(1, b.ax_t(1, p));
        add("rm-on-axt", b.build());
    }
    {
        TopoProofBuilder b;
        b.rm(2, b.ax_4(1, p));
        add("rm-cross-agent", b.build());
    }
    {
        TopoProofBuilder b;
        const std::size_t t1 = b.taut(Formula::imp(p, p));
        const std::size_t t2 =
            b.taut(Formula::imp(b.formula(t1), Formula::imp(q, b.formula(t1))));
        b.mp(t2, t1);
        add("mp-weakening", b.build());
    }
    add("k-axiom", prove_axiom_K_topo(1, p, q));
    add("k-axiom-diagonal", prove_axiom_K_topo(1, p, p));
    add("k-axiom-nested", prove_axiom_K_topo(1, Formula::know(1, p), q));
    {
        TopoProofBuilder b;
        b.taut(Formula::imp(p, p));
        add("nec-taut", prove_nec_topo(1, b.build()));
    }
    {
        TopoProofBuilder b;
        b.ax_n(1);
        add("nec-on-axn", prove_nec_topo(2, b.build()));
    }
    {
        TopoProofBuilder b;
        b.taut(Formula::imp(p, p));
        add("nec-stacked", prove_nec_topo(1, prove_nec_topo(1, b.build())));
    }
    {
        TopoProofBuilder b;
        const std::size_t kp = b.splice(prove_axiom_K_topo(1, p, q));
        b.rm(1, kp);
        add("rm-on-k-axiom", b.build());
    }

    return out;
}

TopoProof random_topo_proof(std::uint64_t seed, std::size_t target_steps) {
    std::mt19937_64 eng(seed);
    const std::vector<std::string> vars = {"p", "q"};
    const std::vector<Agent> agents = {1, 2};
    const auto pick = [&eng](std::uint64_t n) { return eng() % n; };
    const auto small = [&] {
        return random_formula(eng, 1 + static_cast<std::uint32_t>(pick(2)), vars, agents);
    };

    TopoProofBuilder b;
    while (b.size() < target_steps) {
        switch (pick(7)) {
            case 0: b.ax_n(agents[pick(2)]); break;
            case 1: b.ax_r(agents[pick(2)], small(), small()); break;
            case 2: b.ax_t(agents[pick(2)], small()); break;
            case 3: b.ax_4(agents[pick(2)], small()); break;
            case 4: {
                const Formula a = small();
                const Formula c = small();
                switch (pick(3)) {
                    case 0: b.taut(Formula::imp(a, a)); break;
                    case 1: b.taut(Formula::imp(a, Formula::imp(c, a))); break;
                    default: b.taut(Formula::imp(Formula::conj(a, c), c)); break;
                }
                break;
            }
            case 5: {
                std::vector<std::size_t> imps;
                for (std::size_t j = 1; j <= b.size(); ++j)
                    if (b.formula(j).kind() == Kind::Imp) imps.push_back(j);
                if (!imps.empty()) b.rm(agents[pick(2)], imps[pick(imps.size())]);
                break;
            }
            default: {
                std::vector<std::pair<std::size_t, std::size_t>> fits;
                for (std::size_t j = 1; j <= b.size(); ++j) {
                    const Formula& fj = b.formula(j);
                    if (fj.kind() != Kind::Imp) continue;
                    for (std::size_t kk = 1; kk <= b.size(); ++kk) {
                        if (fj.lhs() == b.formula(kk)) fits.emplace_back(j, kk);
                    }
                }
                if (!fits.empty()) {
                    const auto [j, kk] = fits[pick(fits.size())];
                    b.mp(j, kk);
                }
                break;
            }
        }
    }
    return b.build();
}

// ---- certificates --------------------------------------------------------------------

std::string topo_proof_to_text(const TopoProof& pr) {
    std::string out = "system TOPOS4\n";
    for (std::size_t i = 0; i < pr.steps.size(); ++i) {
        const TopoStep& st = pr.steps[i];
        out += std::to_string(i + 1) + ": " + render(st.formula) + " ; ";
        switch (st.rule) {
            case TopoRuleKind::Mp:
                out += "MP " + std::to_string(st.j) + " " + std::to_string(st.k);
                break;
            case TopoRuleKind::Rm:
                out += "RM " + std::to_string(st.agent) + " " + std::to_string(st.j);
                break;
            default:
                out += topo_rule_name(st.rule);
                break;
        }
        out += "\n";
    }
    return out;
}

Expected<TopoProof, ParseError> topo_proof_from_text(std::string_view text) {
    detail::LineScanner scan{text};
    auto first = scan.next();
    if (!first) return ParseError{0, "missing 'system TOPOS4' header", {}};
    {
        const auto words = detail::split_ws(first->first);
        if (words.size() != 2 || words[0] != "system" || words[1] != "TOPOS4")
            return ParseError{first->second, "expected 'system TOPOS4' header", {}};
    }

    TopoProof pr;
    while (auto ln = scan.next()) {
        const auto [line, off] = *ln;
        const auto err = [off](std::string msg) { return ParseError{off, std::move(msg), {}}; };

        const std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) return err("expected 'n: <formula> ; <rule>'");
        std::uint64_t n = 0;
        {
            std::size_t e = line.substr(0, colon).find_last_not_of(" \t");
            if (e == std::string_view::npos || !detail::parse_nat(line.substr(0, e + 1), n))
                return err("expected a step number before ':'");
        }
        if (n != pr.steps.size() + 1)
            return err("step numbers must ascend from 1 (expected " +
                       std::to_string(pr.steps.size() + 1) + ")");

        const std::size_t semi = line.find(';', colon + 1);
        if (semi == std::string_view::npos) return err("missing ' ; <rule>'");
        auto parsed = parse(line.substr(colon + 1, semi - colon - 1));
        if (!parsed.ok()) {
            ParseError pe = parsed.error();
            pe.offset += off + colon + 1;
            return pe;
        }

        const auto rwords = detail::split_ws(line.substr(semi + 1));
        if (rwords.empty()) return err("missing rule after ';'");
        const std::string_view rule = rwords[0];
        if (rule == "TAUT") {
            pr.steps.push_back(TopoStep::taut(parsed.take()));
        } else if (rule == "AXN" || rule == "AXR" || rule == "AXT" || rule == "AX4") {
            if (rwords.size() != 1) return err(std::string(rule) + " takes no arguments");
            const TopoRuleKind r = rule == "AXN"   ? TopoRuleKind::AxN
                                   : rule == "AXR" ? TopoRuleKind::AxR
                                   : rule == "AXT" ? TopoRuleKind::AxT
                                                   : TopoRuleKind::Ax4;
            pr.steps.push_back(TopoStep::axiom(r, parsed.take()));
        } else if (rule == "MP") {
            std::uint64_t j = 0, k = 0;
            if (rwords.size() != 3 || !detail::parse_nat(rwords[1], j) ||
                !detail::parse_nat(rwords[2], k))
                return err("expected 'MP j k'");
            pr.steps.push_back(TopoStep::mp(parsed.take(), j, k));
        } else if (rule == "RM") {
            std::uint64_t i = 0, j = 0;
            if (rwords.size() != 3 || !detail::parse_nat(rwords[1], i) ||
                !detail::parse_nat(rwords[2], j))
                return err("expected 'RM i j'");
            pr.steps.push_back(TopoStep::rm(parsed.take(), static_cast<Agent>(i), j));
        } else {
            return err("unknown rule '" + std::string(rule) + "'");
        }
    }
    if (pr.steps.empty()) return ParseError{text.size(), "certificate has no steps", {}};
    return pr;
}

}  // namespace epi
