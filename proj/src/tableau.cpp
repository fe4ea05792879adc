#include "epi/decision.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace epi {

std::string_view logic_name(Logic l) { return l == Logic::K ? "K" : "S4"; }

std::optional<Logic> logic_from_name(std::string_view name) {
    if (name == "K") return Logic::K;
    if (name == "S4") return Logic::S4;
    return std::nullopt;
}

namespace {

// One tableau state: the demand set it was spawned with (the loop-check key)
// plus, once its branch succeeds, the saturated set and outgoing edges.
struct TabNode {
    std::vector<Formula> spawn;
    std::vector<Formula> sat;
    std::vector<std::pair<Agent, std::size_t>> edges;
};

struct Tableau {
    Logic logic;
    std::vector<TabNode> arena;
    std::vector<std::size_t> chain;  // ancestor node indices, root first

    explicit Tableau(Logic l) : logic(l) {}

    bool saturate(std::size_t idx, std::set<Formula> have, std::vector<Formula> todo);
    bool modal(std::size_t idx, const std::set<Formula>& have);
    bool solve(std::vector<Formula> spawn, Agent via, std::size_t parent);
};

// Spawns a state for `spawn` as an i-successor of `parent` (loop-checking in
// S4), saturates it, and records the edge. On failure the arena is left for
// the caller to truncate.
bool Tableau::solve(std::vector<Formula> spawn, Agent via, std::size_t parent) {
    if (logic == Logic::S4) {
        for (std::size_t a : chain) {
            if (arena[a].spawn == spawn) {
                arena[parent].edges.emplace_back(via, a);
                return true;
            }
        }
    }
    if (arena.size() >= kTableauNodeBudget) throw std::runtime_error("tableau state budget exceeded");
    const std::size_t child = arena.size();
    arena.push_back(TabNode{spawn, {}, {}});
    chain.push_back(child);
    const bool ok = saturate(child, {}, std::move(spawn));
    chain.pop_back();
    if (!ok) return false;
    arena[parent].edges.emplace_back(via, child);
    return true;
}

bool Tableau::saturate(std::size_t idx, std::set<Formula> have, std::vector<Formula> todo) {
    while (!todo.empty()) {
        const Formula f = todo.back();
        todo.pop_back();
        if (f.is_top()) continue;
        if (f.kind() == Kind::Bottom) return false;
        if (have.count(f)) continue;
        if (have.count(Formula::neg(f))) return false;
        if (f.is_neg() && have.count(f.lhs())) return false;
        have.insert(f);

        const auto branch = [&](const Formula& left, const Formula& right) {
            const std::size_t amark = arena.size();
            const std::size_t emark = arena[idx].edges.size();
            for (const Formula& alt : {left, right}) {
                arena.resize(amark);
                arena[idx].edges.resize(emark);
                std::vector<Formula> t2 = todo;
                t2.push_back(alt);
                if (saturate(idx, have, std::move(t2))) return true;
            }
            return false;
        };

        switch (f.kind()) {
            case Kind::Bottom:
            case Kind::Var:
                break;
            case Kind::And:
                todo.push_back(f.lhs());
                todo.push_back(f.rhs());
                break;
            case Kind::Or:
                return branch(f.lhs(), f.rhs());
            case Kind::Know:
                if (logic == Logic::S4) todo.push_back(f.body());
                break;
            case Kind::Imp: {
                if (!f.is_neg()) return branch(Formula::neg(f.lhs()), f.rhs());
                const Formula x = f.lhs();
                switch (x.kind()) {
                    case Kind::Bottom:  // ~false, settled by is_top above
                        break;
                    case Kind::Var:  // negative literal
                        break;
                    case Kind::And:
                        return branch(Formula::neg(x.lhs()), Formula::neg(x.rhs()));
                    case Kind::Or:
                        todo.push_back(Formula::neg(x.lhs()));
                        todo.push_back(Formula::neg(x.rhs()));
                        break;
                    case Kind::Imp:
                        if (x.is_neg()) {  // ~~y
                            todo.push_back(x.lhs());
                        } else {  // ~(a -> b)
                            todo.push_back(x.lhs());
                            todo.push_back(Formula::neg(x.rhs()));
                        }
                        break;
                    case Kind::Know:  // possibility, handled at the modal stage
                        break;
                }
                break;
            }
        }
    }
    return modal(idx, have);
}

bool Tableau::modal(std::size_t idx, const std::set<Formula>& have) {
    arena[idx].sat.assign(have.begin(), have.end());
    for (const Formula& f : have) {
        if (!f.is_neg() || f.lhs().kind() != Kind::Know) continue;
        const Agent i = f.lhs().agent();
        std::vector<Formula> spawn;
        spawn.push_back(Formula::neg(f.lhs().body()));
        for (const Formula& g : have) {
            if (g.kind() != Kind::Know || g.agent() != i) continue;
            spawn.push_back(g.body());
            if (logic == Logic::S4) spawn.push_back(g);
        }
        std::sort(spawn.begin(), spawn.end());
        spawn.erase(std::unique(spawn.begin(), spawn.end()), spawn.end());
        if (!solve(std::move(spawn), i, idx)) return false;
    }
    return true;
}

PointedModel read_off(Logic logic, const Formula& f, const std::vector<TabNode>& arena) {
    Model m;
    m.frame.num_worlds = static_cast<std::uint32_t>(arena.size());
    for (std::size_t w = 0; w < arena.size(); ++w) {
        for (const auto& [i, t] : arena[w].edges)
            m.frame.add_edge(i, static_cast<WorldId>(w), static_cast<WorldId>(t));
        for (const Formula& g : arena[w].sat) {
            if (g.kind() == Kind::Var) m.valuation[g.name()] |= WorldSet{1} << w;
        }
    }
    const CompiledFormula cf(f);
    for (const std::string& v : cf.vars()) m.valuation.emplace(v, 0);
    if (logic == Logic::S4) {
        for (Agent i : cf.agents()) (void)m.frame.rel[i];  // closure adds the diagonal
        m.frame = refl_trans_closure(m.frame);
    }
    return PointedModel{std::move(m), 0};
}

}  // namespace

TableauResult tableau_sat(Logic logic, const Formula& f) {
    if (f.size() > kTableauFormulaSizeCap)
        throw std::invalid_argument("tableau_sat: formula exceeds the size cap");
    Tableau tb(logic);
    tb.arena.push_back(TabNode{{f}, {}, {}});
    tb.chain.push_back(0);
    if (!tb.saturate(0, {}, {f})) return TableauResult{false, std::nullopt};

    PointedModel pm = read_off(logic, f, tb.arena);
    if (!eval(pm.model, pm.world, f))
        throw std::logic_error("tableau_sat: witness fails its own formula");
    const FrameClass cls = logic == Logic::S4 ? FrameClass::Preorder : FrameClass::All;
    if (!class_check_all(pm.model.frame, cls))
        throw std::logic_error("tableau_sat: witness frame leaves the logic's class");
    return TableauResult{true, std::move(pm)};
}

Decision decide_valid(Logic logic, const Formula& f) {
    TableauResult r = tableau_sat(logic, Formula::neg(f));
    if (!r.sat) return Decision{true, std::nullopt};
    return Decision{false, std::move(r.witness)};
}

}  // namespace epi
