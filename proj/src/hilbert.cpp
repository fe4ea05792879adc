#include "epi/hilbert.hpp"

#include "text_lines.hpp"

#include <unordered_map>
#include <utility>

namespace epi {

std::optional<System> system_from_name(std::string_view name) {
    if (name == "K") return System::k();
    if (name == "S4") return System::s4();
    if (name == "K2") return System::k2();
    if (name == "S42") return System::s42();
    return std::nullopt;
}

std::string system_name(const System& sys) {
    if (sys.schemas == System::k().schemas) return "K";
    if (sys.schemas == System::s4().schemas) return "S4";
    if (sys.schemas == System::k2().schemas) return "K2";
    if (sys.schemas == System::s42().schemas) return "S42";
    return "custom";
}

Step Step::taut(Formula f) {
    Step st;
    st.formula = std::move(f);
    st.rule = RuleKind::Taut;
    return st;
}

Step Step::axiom(SchemaName s, Formula f) {
    Step st;
    st.formula = std::move(f);
    st.rule = RuleKind::Axiom;
    st.schema = s;
    return st;
}

Step Step::mp(Formula f, std::size_t j, std::size_t k) {
    Step st;
    st.formula = std::move(f);
    st.rule = RuleKind::Mp;
    st.j = j;
    st.k = k;
    return st;
}

Step Step::nec(Formula f, Agent i, std::size_t j) {
    Step st;
    st.formula = std::move(f);
    st.rule = RuleKind::Nec;
    st.agent = i;
    st.j = j;
    return st;
}

// ---- tautology check ---------------------------------------------------------

namespace {

// Propositional skeleton compiled to a post-order op list; Var and Know
// subformulas are the atoms (equal ones share a slot).
struct SkeletonOp {
    Kind kind;  // Bottom, Var (= atom), Or, And, Imp
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t atom = 0;
};

std::uint32_t skeleton_walk(const Formula& f, std::vector<SkeletonOp>& ops,
                            std::unordered_map<Formula, std::uint32_t, FormulaHash>& memo,
                            std::uint32_t& atoms) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    SkeletonOp op;
    switch (f.kind()) {
        case Kind::Bottom:
            op.kind = Kind::Bottom;
            break;
        case Kind::Var:
        case Kind::Know:
            op.kind = Kind::Var;
            op.atom = atoms++;
            break;
        default:
            op.kind = f.kind();
            op.a = skeleton_walk(f.lhs(), ops, memo, atoms);
            op.b = skeleton_walk(f.rhs(), ops, memo, atoms);
            break;
    }
    const auto idx = static_cast<std::uint32_t>(ops.size());
    ops.push_back(op);
    memo.emplace(f, idx);
    return idx;
}

// 64 assignments per pass: atoms 0..5 ride the bit lanes, the rest come from
// the block counter.
constexpr std::uint64_t kLanes[6] = {
    0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
    0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
};

}  // namespace

bool is_tautology(const Formula& f) {
    std::vector<SkeletonOp> ops;
    std::unordered_map<Formula, std::uint32_t, FormulaHash> memo;
    std::uint32_t atoms = 0;
    skeleton_walk(f, ops, memo, atoms);
    if (atoms > kTautologyAtomCap) throw TooManyAtoms(atoms);

    const std::uint64_t blocks = atoms > 6 ? (std::uint64_t{1} << (atoms - 6)) : 1;
    const std::uint64_t live =
        atoms >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << atoms)) - 1);
    std::vector<std::uint64_t> val(ops.size());
    for (std::uint64_t block = 0; block < blocks; ++block) {
        for (std::size_t k = 0; k < ops.size(); ++k) {
            const SkeletonOp& op = ops[k];
            switch (op.kind) {
                case Kind::Bottom: val[k] = 0; break;
                case Kind::Var:
                    val[k] = op.atom < 6 ? kLanes[op.atom]
                                         : ((block >> (op.atom - 6)) & 1 ? ~std::uint64_t{0} : 0);
                    break;
                case Kind::Or: val[k] = val[op.a] | val[op.b]; break;
                case Kind::And: val[k] = val[op.a] & val[op.b]; break;
                default: val[k] = ~val[op.a] | val[op.b]; break;
            }
        }
        if ((val.back() & live) != live) return false;
    }
    return true;
}

// ---- kernel -------------------------------------------------------------------

std::string CheckError::format() const {
    if (step == 0) return reason;
    return "line " + std::to_string(step) + ": " + reason;
}

Expected<Formula, CheckError> check_proof(const System& sys, const Proof& pr) {
    if (pr.steps.empty()) return CheckError{0, "empty proof"};
    for (std::size_t i = 0; i < pr.steps.size(); ++i) {
        const Step& st = pr.steps[i];
        const std::size_t n = i + 1;
        switch (st.rule) {
            case RuleKind::Taut: {
                bool ok = false;
                try {
                    ok = is_tautology(st.formula);
                } catch (const TooManyAtoms& e) {
                    return CheckError{n, e.what()};
                }
                if (!ok) return CheckError{n, "not a propositional tautology"};
                break;
            }
            case RuleKind::Axiom: {
                if (!sys.schemas.count(st.schema))
                    return CheckError{n, "schema " + std::string(schema_name(st.schema)) +
                                             " not in system " + system_name(sys)};
                if (!match_schema(st.schema, st.formula))
                    return CheckError{n, "formula does not match schema " +
                                             std::string(schema_name(st.schema))};
                break;
            }
            case RuleKind::Mp: {
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
            case RuleKind::Nec: {
                if (st.j < 1 || st.j >= n)
                    return CheckError{n, "NEC reference must point at a strictly earlier step"};
                if (st.formula.kind() != Kind::Know || st.formula.agent() != st.agent ||
                    !(st.formula.body() == pr.steps[st.j - 1].formula))
                    return CheckError{n, "formula is not K" + std::to_string(st.agent) +
                                             " of step " + std::to_string(st.j)};
                break;
            }
        }
    }
    return pr.steps.back().formula;
}

namespace {

bool peels_to(const Formula& f, const std::vector<Formula>& premises, const Formula& goal) {
    if (f == goal) return true;
    if (f.kind() != Kind::Imp) return false;
    const Formula ant = f.lhs();
    for (const Formula& p : premises) {
        if (p == ant) return peels_to(f.rhs(), premises, goal);
    }
    return false;
}

}  // namespace

Expected<Formula, CheckError> check_deduction(const System& sys,
                                              const std::vector<Formula>& premises,
                                              const Formula& goal, const Proof& pr) {
    auto fin = check_proof(sys, pr);
    if (!fin.ok()) return fin.error();
    if (!peels_to(fin.value(), premises, goal))
        return CheckError{pr.steps.size(),
                          "final formula does not reduce to the goal over the premises"};
    return goal;
}

// ---- builder -------------------------------------------------------------------

std::size_t ProofBuilder::push(Step st) {
    steps_.push_back(std::move(st));
    return steps_.size();
}

std::size_t ProofBuilder::taut(Formula f) { return push(Step::taut(std::move(f))); }

std::size_t ProofBuilder::axiom(SchemaName s, Agent i, const Formula& phi,
                                const std::optional<Formula>& psi) {
    return push(Step::axiom(s, instantiate_schema(s, i, phi, psi)));
}

std::size_t ProofBuilder::axiom_instance(SchemaName s, Formula instance) {
    if (!match_schema(s, instance))
        throw std::logic_error("axiom_instance: formula does not match " +
                               std::string(schema_name(s)));
    return push(Step::axiom(s, std::move(instance)));
}

std::size_t ProofBuilder::mp(std::size_t imp_step, std::size_t ant_step) {
    const Formula& maj = formula(imp_step);
    if (maj.kind() != Kind::Imp || !(maj.lhs() == formula(ant_step)))
        throw std::logic_error("mp: steps do not fit modus ponens");
    return push(Step::mp(maj.rhs(), imp_step, ant_step));
}

std::size_t ProofBuilder::nec(Agent i, std::size_t step) {
    return push(Step::nec(Formula::know(i, formula(step)), i, step));
}

std::size_t ProofBuilder::splice(const Proof& pr) {
    if (pr.steps.empty()) throw std::logic_error("splice: empty proof");
    const std::size_t offset = steps_.size();
    for (Step st : pr.steps) {
        if (st.rule == RuleKind::Mp) {
            st.j += offset;
            st.k += offset;
        } else if (st.rule == RuleKind::Nec) {
            st.j += offset;
        }
        steps_.push_back(std::move(st));
    }
    return steps_.size();
}

const Formula& ProofBuilder::formula(std::size_t step) const {
    if (step < 1 || step > steps_.size()) throw std::logic_error("formula: bad step index");
    return steps_[step - 1].formula;
}

// ---- certificates ---------------------------------------------------------------

namespace {

std::string_view rule_token(SchemaName s) {
    switch (s) {
        case SchemaName::AxK: return "AXK";
        case SchemaName::AxT: return "AXT";
        case SchemaName::Ax4: return "AX4";
        case SchemaName::Ax2: return "AX2";
        case SchemaName::AxN: return "AXN";
        case SchemaName::AxR: return "AXR";
    }
    return "?";
}

std::optional<SchemaName> schema_from_token(std::string_view tok) {
    if (tok == "AXK") return SchemaName::AxK;
    if (tok == "AXT") return SchemaName::AxT;
    if (tok == "AX4") return SchemaName::Ax4;
    if (tok == "AX2") return SchemaName::Ax2;
    return std::nullopt;
}

}  // namespace

std::string proof_to_text(const System& sys, const Proof& pr) {
    std::string out = "system " + system_name(sys) + "\n";
    for (std::size_t i = 0; i < pr.steps.size(); ++i) {
        const Step& st = pr.steps[i];
        out += std::to_string(i + 1) + ": " + render(st.formula) + " ; ";
        switch (st.rule) {
            case RuleKind::Taut: out += "TAUT"; break;
            case RuleKind::Axiom: out += rule_token(st.schema); break;
            case RuleKind::Mp:
                out += "MP " + std::to_string(st.j) + " " + std::to_string(st.k);
                break;
            case RuleKind::Nec:
                out += "NEC " + std::to_string(st.agent) + " " + std::to_string(st.j);
                break;
        }
        out += "\n";
    }
    return out;
}

Expected<std::pair<System, Proof>, ParseError> proof_from_text(std::string_view text) {
    detail::LineScanner scan{text};
    auto first = scan.next();
    if (!first) return ParseError{0, "missing 'system NAME' header", {}};
    {
        const auto words = detail::split_ws(first->first);
        if (words.size() != 2 || words[0] != "system")
            return ParseError{first->second, "expected 'system K|S4|K2|S42' header", {}};
        if (!system_from_name(words[1]))
            return ParseError{first->second, "unknown system '" + std::string(words[1]) + "'", {}};
    }
    const System sys = *system_from_name(detail::split_ws(first->first)[1]);

    Proof pr;
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
        const std::string_view ftext = line.substr(colon + 1, semi - colon - 1);
        auto parsed = parse(ftext);
        if (!parsed.ok()) {
            ParseError pe = parsed.error();
            pe.offset += off + colon + 1;
            return pe;
        }

        const auto rwords = detail::split_ws(line.substr(semi + 1));
        if (rwords.empty()) return err("missing rule after ';'");
        const std::string_view rule = rwords[0];
        if (rule == "TAUT") {
            if (rwords.size() != 1) return err("TAUT takes no arguments");
            pr.steps.push_back(Step::taut(parsed.take()));
        } else if (auto s = schema_from_token(rule)) {
            if (rwords.size() != 1)
                return err(std::string(rule) + " takes no arguments");
            pr.steps.push_back(Step::axiom(*s, parsed.take()));
        } else if (rule == "MP") {
            std::uint64_t j = 0, k = 0;
            if (rwords.size() != 3 || !detail::parse_nat(rwords[1], j) ||
                !detail::parse_nat(rwords[2], k))
                return err("expected 'MP j k'");
            pr.steps.push_back(Step::mp(parsed.take(), j, k));
        } else if (rule == "NEC") {
            std::uint64_t i = 0, j = 0;
            if (rwords.size() != 3 || !detail::parse_nat(rwords[1], i) ||
                !detail::parse_nat(rwords[2], j))
                return err("expected 'NEC i j'");
            pr.steps.push_back(Step::nec(parsed.take(), static_cast<Agent>(i), j));
        } else {
            return err("unknown rule '" + std::string(rule) + "'");
        }
    }
    if (pr.steps.empty()) return ParseError{text.size(), "certificate has no steps", {}};
    return std::make_pair(sys, std::move(pr));
}

}  // namespace epi
