#include "epi/kripke.hpp"

#include "text_lines.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace epi {

namespace {

WorldSet full_mask(std::uint32_t n) {
    return n >= 64 ? ~WorldSet{0} : ((WorldSet{1} << n) - 1);
}

}  // namespace

std::string_view frame_class_name(FrameClass cls) {
    switch (cls) {
        case FrameClass::All: return "all";
        case FrameClass::Reflexive: return "reflexive";
        case FrameClass::Transitive: return "transitive";
        case FrameClass::Preorder: return "preorder";
        case FrameClass::WeaklyDirected: return "weakly-directed";
        case FrameClass::WeaklyDirectedPreorder: return "wd-preorder";
    }
    return "?";
}

std::optional<FrameClass> frame_class_from_name(std::string_view name) {
    if (name == "all") return FrameClass::All;
    if (name == "reflexive") return FrameClass::Reflexive;
    if (name == "transitive") return FrameClass::Transitive;
    if (name == "preorder") return FrameClass::Preorder;
    if (name == "weakly-directed" || name == "wd") return FrameClass::WeaklyDirected;
    if (name == "wd-preorder") return FrameClass::WeaklyDirectedPreorder;
    return std::nullopt;
}

WorldSet Frame::successors(Agent i, WorldId w) const {
    auto it = rel.find(i);
    if (it == rel.end() || w >= it->second.succ.size()) return 0;
    return it->second.succ[w];
}

bool Frame::edge(Agent i, WorldId a, WorldId b) const {
    return (successors(i, a) >> b) & 1;
}

void Frame::add_edge(Agent i, WorldId a, WorldId b) {
    if (a >= num_worlds || b >= num_worlds) throw std::out_of_range("add_edge: world out of range");
    auto& r = rel[i];
    r.succ.resize(num_worlds, 0);
    r.succ[a] |= WorldSet{1} << b;
}

std::vector<std::pair<WorldId, WorldId>> Frame::pairs(Agent i) const {
    std::vector<std::pair<WorldId, WorldId>> out;
    auto it = rel.find(i);
    if (it == rel.end()) return out;
    for (WorldId a = 0; a < it->second.succ.size(); ++a) {
        for (WorldSet s = it->second.succ[a]; s; s &= s - 1)
            out.emplace_back(a, static_cast<WorldId>(std::countr_zero(s)));
    }
    return out;
}

bool eval(const Model& m, WorldId w, const Formula& f) {
    if (w >= m.frame.num_worlds) throw std::out_of_range("eval: world out of range");
    switch (f.kind()) {
        case Kind::Bottom: return false;
        case Kind::Var: {
            auto it = m.valuation.find(f.name());
            return it != m.valuation.end() && ((it->second >> w) & 1);
        }
        case Kind::Or: return eval(m, w, f.lhs()) || eval(m, w, f.rhs());
        case Kind::And: return eval(m, w, f.lhs()) && eval(m, w, f.rhs());
        case Kind::Imp: return !eval(m, w, f.lhs()) || eval(m, w, f.rhs());
        case Kind::Know: {
            const Formula body = f.body();
            for (WorldSet s = m.frame.successors(f.agent(), w); s; s &= s - 1) {
                if (!eval(m, static_cast<WorldId>(std::countr_zero(s)), body)) return false;
            }
            return true;
        }
    }
    return false;
}

bool is_reflexive(const Relation& r, std::uint32_t n) {
    for (WorldId w = 0; w < n; ++w) {
        if (w >= r.succ.size() || !((r.succ[w] >> w) & 1)) return false;
    }
    return true;
}

bool is_transitive(const Relation& r, std::uint32_t n) {
    for (WorldId w = 0; w < n && w < r.succ.size(); ++w) {
        for (WorldSet s = r.succ[w]; s; s &= s - 1) {
            const auto v = static_cast<WorldId>(std::countr_zero(s));
            const WorldSet sv = v < r.succ.size() ? r.succ[v] : 0;
            if (sv & ~r.succ[w]) return false;
        }
    }
    return true;
}

bool is_weakly_directed(const Relation& r, std::uint32_t n) {
    for (WorldId x = 0; x < n && x < r.succ.size(); ++x) {
        for (WorldSet sy = r.succ[x]; sy; sy &= sy - 1) {
            const auto y = static_cast<WorldId>(std::countr_zero(sy));
            const WorldSet ry = y < r.succ.size() ? r.succ[y] : 0;
            for (WorldSet sz = r.succ[x]; sz; sz &= sz - 1) {
                const auto z = static_cast<WorldId>(std::countr_zero(sz));
                const WorldSet rz = z < r.succ.size() ? r.succ[z] : 0;
                if (!(ry & rz)) return false;
            }
        }
    }
    return true;
}

namespace {

Relation padded(const Frame& fr, Agent i) {
    Relation r;
    auto it = fr.rel.find(i);
    if (it != fr.rel.end()) r = it->second;
    r.succ.resize(fr.num_worlds, 0);
    return r;
}

}  // namespace

bool class_check(const Frame& fr, Agent i, FrameClass cls) {
    const Relation r = padded(fr, i);
    const std::uint32_t n = fr.num_worlds;
    switch (cls) {
        case FrameClass::All: return true;
        case FrameClass::Reflexive: return is_reflexive(r, n);
        case FrameClass::Transitive: return is_transitive(r, n);
        case FrameClass::Preorder: return is_reflexive(r, n) && is_transitive(r, n);
        case FrameClass::WeaklyDirected: return is_weakly_directed(r, n);
        case FrameClass::WeaklyDirectedPreorder:
            return is_reflexive(r, n) && is_transitive(r, n) && is_weakly_directed(r, n);
    }
    return false;
}

bool class_check_all(const Frame& fr, FrameClass cls) {
    for (const auto& [agent, r] : fr.rel) {
        (void)r;
        if (!class_check(fr, agent, cls)) return false;
    }
    return true;
}

Frame refl_trans_closure(const Frame& fr) {
    Frame out = fr;
    for (auto& [agent, r] : out.rel) {
        (void)agent;
        r.succ.resize(out.num_worlds, 0);
        for (WorldId w = 0; w < out.num_worlds; ++w) r.succ[w] |= WorldSet{1} << w;
        bool changed = true;
        while (changed) {
            changed = false;
            for (WorldId w = 0; w < out.num_worlds; ++w) {
                WorldSet acc = r.succ[w];
                for (WorldSet s = r.succ[w]; s; s &= s - 1)
                    acc |= r.succ[std::countr_zero(s)];
                if (acc != r.succ[w]) {
                    r.succ[w] = acc;
                    changed = true;
                }
            }
        }
    }
    return out;
}

namespace {

// Appends one fresh world reachable from everything (itself included), per
// mapped agent. No precondition; add_final_cluster layers the preorder check.
Frame append_final_world(const Frame& fr) {
    Frame out = fr;
    const WorldId f = out.num_worlds;
    out.num_worlds += 1;
    const WorldSet fbit = WorldSet{1} << f;
    for (auto& [agent, r] : out.rel) {
        (void)agent;
        r.succ.resize(out.num_worlds - 1, 0);
        for (auto& row : r.succ) row |= fbit;
        r.succ.push_back(fbit);
    }
    return out;
}

}  // namespace

Frame add_final_cluster(const Frame& fr) {
    if (fr.num_worlds + 1 > kMaxWorlds) throw std::invalid_argument("add_final_cluster: too many worlds");
    for (const auto& [agent, r] : fr.rel) {
        (void)r;
        if (!class_check(fr, agent, FrameClass::Preorder))
            throw std::invalid_argument("add_final_cluster: relation of agent " +
                                        std::to_string(agent) + " is not a preorder");
    }
    return append_final_world(fr);
}

// ---- enumeration -----------------------------------------------------------

namespace {

bool relation_bits_in_class(std::uint64_t u, std::uint32_t n, FrameClass cls) {
    if (cls == FrameClass::All) return true;
    WorldSet rows[8];
    const WorldSet full = full_mask(n);
    for (WorldId w = 0; w < n; ++w) rows[w] = (u >> (w * n)) & full;

    const bool need_refl = cls == FrameClass::Reflexive || cls == FrameClass::Preorder ||
                           cls == FrameClass::WeaklyDirectedPreorder;
    const bool need_trans = cls == FrameClass::Transitive || cls == FrameClass::Preorder ||
                            cls == FrameClass::WeaklyDirectedPreorder;
    const bool need_wd = cls == FrameClass::WeaklyDirected ||
                         cls == FrameClass::WeaklyDirectedPreorder;

    if (need_refl) {
        for (WorldId w = 0; w < n; ++w)
            if (!((rows[w] >> w) & 1)) return false;
    }
    if (need_trans) {
        for (WorldId w = 0; w < n; ++w) {
            for (WorldSet s = rows[w]; s; s &= s - 1) {
                if (rows[std::countr_zero(s)] & ~rows[w]) return false;
            }
        }
    }
    if (need_wd) {
        for (WorldId x = 0; x < n; ++x) {
            for (WorldSet sy = rows[x]; sy; sy &= sy - 1) {
                const WorldSet ry = rows[std::countr_zero(sy)];
                for (WorldSet sz = rows[x]; sz; sz &= sz - 1) {
                    if (!(ry & rows[std::countr_zero(sz)])) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

const std::vector<std::uint64_t>& relation_catalog(std::uint32_t n, FrameClass cls) {
    if (n < 1 || n > 5) throw std::invalid_argument("relation_catalog: 1 <= n <= 5 required");
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, FrameClass>, std::vector<std::uint64_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, cls);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<std::uint64_t> out;
    const std::uint64_t limit = std::uint64_t{1} << (n * n);
    for (std::uint64_t u = 0; u < limit; ++u) {
        if (relation_bits_in_class(u, n, cls)) out.push_back(u);
    }
    return cache.emplace(key, std::move(out)).first->second;
}

Relation decode_relation(std::uint64_t bits, std::uint32_t n) {
    Relation r;
    r.succ.resize(n, 0);
    const WorldSet full = full_mask(n);
    for (WorldId w = 0; w < n; ++w) r.succ[w] = (bits >> (w * n)) & full;
    return r;
}

std::uint64_t encode_relation(const Relation& r, std::uint32_t n) {
    std::uint64_t out = 0;
    for (WorldId w = 0; w < n && w < r.succ.size(); ++w)
        out |= (r.succ[w] & full_mask(n)) << (w * n);
    return out;
}

FrameEnumerator::FrameEnumerator(std::uint32_t n, std::vector<Agent> agents, FrameClass cls,
                                 std::uint32_t world_cap)
    : n_(n), agents_(std::move(agents)) {
    if (n < 1 || n > world_cap) throw std::invalid_argument("FrameEnumerator: world count out of range");
    std::sort(agents_.begin(), agents_.end());
    agents_.erase(std::unique(agents_.begin(), agents_.end()), agents_.end());
    catalog_ = &relation_catalog(n, cls);
    idx_.assign(agents_.size(), 0);
    if (!agents_.empty() && catalog_->empty()) done_ = true;
}

std::optional<Frame> FrameEnumerator::next() {
    if (done_) return std::nullopt;
    Frame fr;
    fr.num_worlds = n_;
    for (std::size_t k = 0; k < agents_.size(); ++k)
        fr.rel[agents_[k]] = decode_relation((*catalog_)[idx_[k]], n_);
    // advance odometer, last agent fastest
    if (agents_.empty()) {
        done_ = true;
        return fr;
    }
    std::size_t k = agents_.size();
    while (k-- > 0) {
        if (++idx_[k] < catalog_->size()) break;
        idx_[k] = 0;
        if (k == 0) done_ = true;
    }
    return fr;
}

ValuationEnumerator::ValuationEnumerator(Frame fr, std::vector<std::string> vars,
                                         std::uint32_t bit_cap)
    : frame_(std::move(fr)), vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
    const std::uint64_t bits = static_cast<std::uint64_t>(vars_.size()) * frame_.num_worlds;
    if (bits > bit_cap) throw std::invalid_argument("ValuationEnumerator: valuation space over cap");
    total_ = std::uint64_t{1} << bits;
}

std::optional<Model> ValuationEnumerator::next() {
    if (counter_ >= total_) return std::nullopt;
    Model m;
    m.frame = frame_;
    const std::uint32_t n = frame_.num_worlds;
    for (std::size_t j = 0; j < vars_.size(); ++j)
        m.valuation[vars_[j]] = (counter_ >> (j * n)) & full_mask(n);
    ++counter_;
    return m;
}

// ---- compiled evaluation -----------------------------------------------------

CompiledFormula::CompiledFormula(const Formula& f) {
    const std::vector<Formula> closure = subformula_closure(f);
    std::map<std::string, std::uint16_t> var_slot;
    std::map<Agent, std::uint16_t> agent_slot;
    for (const Formula& g : closure) {
        if (g.kind() == Kind::Var) var_slot.emplace(g.name(), 0);
        if (g.kind() == Kind::Know) agent_slot.emplace(g.agent(), 0);
    }
    for (auto& [name, slot] : var_slot) {
        slot = static_cast<std::uint16_t>(vars_.size());
        vars_.push_back(name);
    }
    for (auto& [agent, slot] : agent_slot) {
        slot = static_cast<std::uint16_t>(agents_.size());
        agents_.push_back(agent);
    }
    if (closure.size() > 0xffff) throw std::invalid_argument("CompiledFormula: formula too large");

    std::unordered_map<Formula, std::uint16_t, FormulaHash> pos;
    pos.reserve(closure.size());
    for (const Formula& g : closure) {
        Op op;
        op.kind = g.kind();
        switch (g.kind()) {
            case Kind::Bottom: break;
            case Kind::Var: op.idx = var_slot[g.name()]; break;
            case Kind::Know:
                op.idx = agent_slot[g.agent()];
                op.a = pos.at(g.body());
                break;
            default:
                op.a = pos.at(g.lhs());
                op.b = pos.at(g.rhs());
                break;
        }
        pos.emplace(g, static_cast<std::uint16_t>(ops_.size()));
        ops_.push_back(op);
    }
}

WorldSet CompiledFormula::truth_set(std::uint32_t n, const WorldSet* const* rows,
                                    const WorldSet* vals, WorldSet* scratch) const {
    const WorldSet full = full_mask(n);
    for (std::size_t k = 0; k < ops_.size(); ++k) {
        const Op& op = ops_[k];
        WorldSet v = 0;
        switch (op.kind) {
            case Kind::Bottom: v = 0; break;
            case Kind::Var: v = vals[op.idx] & full; break;
            case Kind::Or: v = scratch[op.a] | scratch[op.b]; break;
            case Kind::And: v = scratch[op.a] & scratch[op.b]; break;
            case Kind::Imp: v = (full & ~scratch[op.a]) | scratch[op.b]; break;
            case Kind::Know: {
                const WorldSet* succ = rows[op.idx];
                const WorldSet t = scratch[op.a];
                for (WorldId w = 0; w < n; ++w) {
                    if ((succ[w] & ~t) == 0) v |= WorldSet{1} << w;
                }
                break;
            }
        }
        scratch[k] = v;
    }
    return ops_.empty() ? 0 : scratch[ops_.size() - 1];
}

WorldSet CompiledFormula::truth_set(const Model& m) const {
    const std::uint32_t n = m.frame.num_worlds;
    std::vector<WorldSet> zeros(n, 0);
    std::vector<const WorldSet*> rows;
    rows.reserve(agents_.size());
    std::vector<Relation> pads;
    pads.reserve(agents_.size());
    for (Agent a : agents_) {
        pads.push_back(padded(m.frame, a));
        rows.push_back(pads.back().succ.data());
    }
    std::vector<WorldSet> vals;
    vals.reserve(vars_.size());
    for (const auto& v : vars_) {
        auto it = m.valuation.find(v);
        vals.push_back(it == m.valuation.end() ? 0 : it->second);
    }
    std::vector<WorldSet> scratch(ops_.size());
    return truth_set(n, rows.data(), vals.data(), scratch.data());
}

// ---- schema validity on frames ------------------------------------------------

bool validates_schema(const Frame& fr, SchemaName s, Agent i) {
    if (s != SchemaName::AxT && s != SchemaName::Ax4 && s != SchemaName::Ax2)
        throw std::invalid_argument("validates_schema: only AxT, Ax4, Ax2 carry frame conditions here");
    const CompiledFormula cf(instantiate_schema(s, i, Formula::var("p")));
    const std::uint32_t n = fr.num_worlds;
    const WorldSet full = full_mask(n);
    const Relation r = padded(fr, i);
    const WorldSet* rows[1] = {r.succ.data()};
    std::vector<WorldSet> scratch(cf.op_count());
    for (WorldSet val = 0; val <= full; ++val) {
        WorldSet vals[1] = {val};
        if (cf.truth_set(n, rows, vals, scratch.data()) != full) return false;
        if (full == ~WorldSet{0}) break;  // unreachable at sane sizes
    }
    return true;
}

// ---- random models -------------------------------------------------------------

Model random_model(std::uint32_t n, const std::vector<Agent>& agents,
                   const std::vector<std::string>& vars, FrameClass cls, std::uint64_t seed) {
    if (n < 1 || n + 1 > kMaxWorlds) throw std::invalid_argument("random_model: bad world count");
    std::mt19937_64 eng(seed);
    Frame fr;
    fr.num_worlds = n;

    std::vector<Agent> as = agents;
    std::sort(as.begin(), as.end());
    as.erase(std::unique(as.begin(), as.end()), as.end());
    for (Agent a : as) {
        Relation r;
        r.succ.reserve(n);
        for (WorldId w = 0; w < n; ++w) r.succ.push_back(eng() & full_mask(n));
        fr.rel[a] = std::move(r);
    }

    switch (cls) {
        case FrameClass::All: break;
        case FrameClass::Reflexive:
            for (auto& [a, r] : fr.rel) {
                (void)a;
                for (WorldId w = 0; w < n; ++w) r.succ[w] |= WorldSet{1} << w;
            }
            break;
        case FrameClass::Transitive: {
            // transitive closure without the diagonal
            for (auto& [a, r] : fr.rel) {
                (void)a;
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (WorldId w = 0; w < n; ++w) {
                        WorldSet acc = r.succ[w];
                        for (WorldSet s = r.succ[w]; s; s &= s - 1) acc |= r.succ[std::countr_zero(s)];
                        if (acc != r.succ[w]) {
                            r.succ[w] = acc;
                            changed = true;
                        }
                    }
                }
            }
            break;
        }
        case FrameClass::Preorder: fr = refl_trans_closure(fr); break;
        case FrameClass::WeaklyDirected: fr = append_final_world(fr); break;
        case FrameClass::WeaklyDirectedPreorder:
            fr = append_final_world(refl_trans_closure(fr));
            break;
    }

    Model m;
    m.frame = std::move(fr);
    const std::uint32_t n2 = m.frame.num_worlds;
    std::vector<std::string> vs = vars;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (const auto& v : vs) m.valuation[v] = eng() & full_mask(n2);

    for (const auto& [a, r] : m.frame.rel) {
        (void)r;
        if (!class_check(m.frame, a, cls)) throw std::logic_error("random_model: repair failed");
    }
    return m;
}

// ---- model files -----------------------------------------------------------------

using detail::LineScanner;
using detail::parse_nat;
using detail::split_ws;

Expected<std::pair<Model, std::optional<WorldId>>, ParseError> parse_model_file(
    std::string_view text) {
    Model m;
    std::optional<WorldId> designated;
    bool have_worlds = false;
    LineScanner scan{text};

    while (auto ln = scan.next()) {
        const auto [line, off] = *ln;
        const auto err = [off](std::string msg) { return ParseError{off, std::move(msg), {}}; };

        const std::size_t colon = line.find(':');
        std::string_view head = colon == std::string_view::npos ? line : line.substr(0, colon);
        const auto words = split_ws(head);
        if (words.empty()) return err("empty line");
        const std::string_view kw = words[0];

        if (kw == "worlds") {
            if (have_worlds) return err("duplicate 'worlds' line");
            std::uint64_t n = 0;
            if (colon != std::string_view::npos || words.size() != 2 || !parse_nat(words[1], n) ||
                n < 1 || n > kMaxWorlds)
                return err("expected 'worlds N' with 1 <= N <= 64");
            m.frame.num_worlds = static_cast<std::uint32_t>(n);
            have_worlds = true;
            continue;
        }
        if (!have_worlds) return err("'worlds N' must come first");

        if (kw == "agent") {
            std::uint64_t a = 0;
            if (colon == std::string_view::npos || words.size() != 2 || !parse_nat(words[1], a))
                return err("expected 'agent I: (a,b) ...'");
            const Agent agent = static_cast<Agent>(a);
            if (m.frame.rel.count(agent)) return err("duplicate agent " + std::to_string(agent));
            Relation r;
            r.succ.assign(m.frame.num_worlds, 0);
            for (std::string_view tokv : split_ws(line.substr(colon + 1))) {
                const std::string tok(tokv);
                if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
                    return err("bad pair '" + tok + "'");
                const std::size_t comma = tok.find(',');
                if (comma == std::string::npos) return err("bad pair '" + tok + "'");
                std::uint64_t x = 0, y = 0;
                if (!parse_nat(std::string_view(tok).substr(1, comma - 1), x) ||
                    !parse_nat(std::string_view(tok).substr(comma + 1, tok.size() - comma - 2), y))
                    return err("bad pair '" + tok + "'");
                if (x >= m.frame.num_worlds || y >= m.frame.num_worlds)
                    return err("pair '" + tok + "' out of range");
                r.succ[x] |= WorldSet{1} << y;
            }
            m.frame.rel.emplace(agent, std::move(r));
            continue;
        }
        if (kw == "val") {
            if (colon == std::string_view::npos || words.size() != 2)
                return err("expected 'val name: w ...'");
            const std::string name(words[1]);
            if (name.empty() || name[0] < 'a' || name[0] > 'z')
                return err("bad variable name '" + name + "'");
            if (m.valuation.count(name)) return err("duplicate variable '" + name + "'");
            WorldSet mask = 0;
            for (std::string_view tok : split_ws(line.substr(colon + 1))) {
                std::uint64_t w = 0;
                if (!parse_nat(tok, w) || w >= m.frame.num_worlds)
                    return err("world '" + std::string(tok) + "' out of range");
                mask |= WorldSet{1} << w;
            }
            m.valuation.emplace(name, mask);
            continue;
        }
        if (kw == "world") {
            if (designated) return err("duplicate 'world' line");
            std::uint64_t w = 0;
            if (colon != std::string_view::npos || words.size() != 2 || !parse_nat(words[1], w) ||
                w >= m.frame.num_worlds)
                return err("expected 'world N' with N in range");
            designated = static_cast<WorldId>(w);
            continue;
        }
        return err("unknown line '" + std::string(kw) + "'");
    }

    if (!have_worlds) return ParseError{0, "missing 'worlds N' line", {}};
    return std::make_pair(std::move(m), designated);
}

Expected<Model, ParseError> model_from_text(std::string_view text) {
    auto r = parse_model_file(text);
    if (!r.ok()) return r.error();
    if (r.value().second) return ParseError{0, "unexpected 'world' line in a plain model file", {}};
    return std::move(r.value().first);
}

Expected<PointedModel, ParseError> pointed_model_from_text(std::string_view text) {
    auto r = parse_model_file(text);
    if (!r.ok()) return r.error();
    if (!r.value().second) return ParseError{0, "missing 'world N' line", {}};
    return PointedModel{std::move(r.value().first), *r.value().second};
}

std::string model_to_text(const Model& m) {
    std::string out = "worlds " + std::to_string(m.frame.num_worlds) + "\n";
    for (const auto& [agent, r] : m.frame.rel) {
        (void)r;
        out += "agent " + std::to_string(agent) + ":";
        for (const auto& [a, b] : m.frame.pairs(agent))
            out += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
        out += "\n";
    }
    const WorldSet full = full_mask(m.frame.num_worlds);
    for (const auto& [name, mask] : m.valuation) {
        out += "val " + name + ":";
        for (WorldSet s = mask & full; s; s &= s - 1)
            out += " " + std::to_string(std::countr_zero(s));
        out += "\n";
    }
    return out;
}

std::string pointed_model_to_text(const PointedModel& pm) {
    return model_to_text(pm.model) + "world " + std::to_string(pm.world) + "\n";
}

}  // namespace epi
