#include "epi/formula.hpp"

#include <stdexcept>
#include <unordered_set>

namespace epi {

struct Formula::Node {
    Kind kind = Kind::Bottom;
    Agent agent = 0;
    std::string name;
    std::shared_ptr<const Node> a;  // lhs / Know body
    std::shared_ptr<const Node> b;  // rhs
    std::size_t hash = 0;
    std::uint32_t size = 1;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::shared_ptr<const Formula::Node>& bottom_node() {
    static const std::shared_ptr<const Formula::Node> n = [] {
        auto node = std::make_shared<Formula::Node>();
        node->kind = Kind::Bottom;
        node->hash = mix(0, static_cast<std::size_t>(Kind::Bottom));
        return node;
    }();
    return n;
}

}  // namespace

Formula::Formula() : node_(bottom_node()) {}

Formula Formula::bottom() { return Formula(bottom_node()); }

Formula Formula::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    n->hash = mix(mix(0, static_cast<std::size_t>(Kind::Var)), std::hash<std::string>{}(n->name));
    return Formula(std::move(n));
}

namespace {

std::size_t binary_hash(Kind k, std::size_t ha, std::size_t hb) {
    return mix(mix(mix(0, static_cast<std::size_t>(k)), ha), hb);
}

}  // namespace

Formula Formula::disj(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Or;
    n->size = 1 + a.size() + b.size();
    n->hash = binary_hash(Kind::Or, a.hash(), b.hash());
    n->a = std::move(a.node_);
    n->b = std::move(b.node_);
    return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->size = 1 + a.size() + b.size();
    n->hash = binary_hash(Kind::And, a.hash(), b.hash());
    n->a = std::move(a.node_);
    n->b = std::move(b.node_);
    return Formula(std::move(n));
}

Formula Formula::imp(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Imp;
    n->size = 1 + a.size() + b.size();
    n->hash = binary_hash(Kind::Imp, a.hash(), b.hash());
    n->a = std::move(a.node_);
    n->b = std::move(b.node_);
    return Formula(std::move(n));
}

Formula Formula::know(Agent i, Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Know;
    n->agent = i;
    n->a = body.node_;
    n->size = 1 + body.size();
    n->hash = mix(mix(mix(0, static_cast<std::size_t>(Kind::Know)), i), body.hash());
    return Formula(std::move(n));
}

Formula Formula::neg(Formula a) { return imp(std::move(a), bottom()); }
Formula Formula::top() { return imp(bottom(), bottom()); }
Formula Formula::poss(Agent i, Formula a) { return neg(know(i, neg(std::move(a)))); }
Formula Formula::bel(Agent i, Formula a) { return poss(i, know(i, std::move(a))); }

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
Agent Formula::agent() const { return node_->agent; }
Formula Formula::lhs() const { return Formula(node_->a); }
Formula Formula::rhs() const { return Formula(node_->b); }
Formula Formula::body() const { return Formula(node_->a); }

bool Formula::is_neg() const {
    return node_->kind == Kind::Imp && node_->b->kind == Kind::Bottom;
}

bool Formula::is_top() const {
    return node_->kind == Kind::Imp && node_->a->kind == Kind::Bottom && node_->b->kind == Kind::Bottom;
}

std::uint32_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool Formula::operator==(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (node_->hash != o.node_->hash || node_->kind != o.node_->kind) return false;
    switch (node_->kind) {
        case Kind::Bottom: return true;
        case Kind::Var: return node_->name == o.node_->name;
        case Kind::Know: return node_->agent == o.node_->agent && body() == o.body();
        default: return lhs() == o.lhs() && rhs() == o.rhs();
    }
}

std::strong_ordering Formula::operator<=>(const Formula& o) const {
    if (node_ == o.node_) return std::strong_ordering::equal;
    if (auto c = node_->kind <=> o.node_->kind; c != 0) return c;
    switch (node_->kind) {
        case Kind::Bottom: return std::strong_ordering::equal;
        case Kind::Var: return node_->name <=> o.node_->name;
        case Kind::Know:
            if (auto c = node_->agent <=> o.node_->agent; c != 0) return c;
            return body() <=> o.body();
        default:
            if (auto c = lhs() <=> o.lhs(); c != 0) return c;
            return rhs() <=> o.rhs();
    }
}

Formula imply(const std::vector<Formula>& ps, const Formula& goal) {
    Formula out = goal;
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) out = Formula::imp(*it, out);
    return out;
}

Formula conjunct(const std::vector<Formula>& ps) {
    Formula out = Formula::top();
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) out = Formula::conj(*it, out);
    return out;
}

namespace {

void closure_walk(const Formula& f, std::vector<Formula>& out,
                  std::unordered_set<Formula, FormulaHash>& seen) {
    switch (f.kind()) {
        case Kind::Bottom:
        case Kind::Var: break;
        case Kind::Know: closure_walk(f.body(), out, seen); break;
        default:
            closure_walk(f.lhs(), out, seen);
            closure_walk(f.rhs(), out, seen);
            break;
    }
    if (seen.insert(f).second) out.push_back(f);
}

}  // namespace

std::vector<Formula> subformula_closure(const Formula& f) {
    std::vector<Formula> out;
    std::unordered_set<Formula, FormulaHash> seen;
    closure_walk(f, out, seen);
    return out;
}

std::vector<Formula> subformula_closure(const std::vector<Formula>& fs) {
    std::vector<Formula> out;
    std::unordered_set<Formula, FormulaHash> seen;
    for (const auto& f : fs) closure_walk(f, out, seen);
    return out;
}

std::string_view schema_name(SchemaName s) {
    switch (s) {
        case SchemaName::AxK: return "AxK";
        case SchemaName::AxT: return "AxT";
        case SchemaName::Ax4: return "Ax4";
        case SchemaName::Ax2: return "Ax2";
        case SchemaName::AxN: return "AxN";
        case SchemaName::AxR: return "AxR";
    }
    return "?";
}

Formula instantiate_schema(SchemaName s, Agent i, const Formula& phi,
                           const std::optional<Formula>& psi) {
    const bool binary = (s == SchemaName::AxK || s == SchemaName::AxR);
    if (binary != psi.has_value()) {
        throw std::invalid_argument(std::string("schema ") + std::string(schema_name(s)) +
                                    (binary ? " needs a second formula" : " takes one formula"));
    }
    using F = Formula;
    switch (s) {
        case SchemaName::AxK:
            return F::imp(F::conj(F::know(i, F::imp(phi, *psi)), F::know(i, phi)), F::know(i, *psi));
        case SchemaName::AxT: return F::imp(F::know(i, phi), phi);
        case SchemaName::Ax4: return F::imp(F::know(i, phi), F::know(i, F::know(i, phi)));
        case SchemaName::Ax2:
            return F::imp(F::neg(F::know(i, F::neg(F::know(i, phi)))),
                          F::know(i, F::neg(F::know(i, F::neg(phi)))));
        case SchemaName::AxN: return F::know(i, F::top());
        case SchemaName::AxR: {
            F both = F::conj(phi, *psi);
            F split = F::conj(F::know(i, phi), F::know(i, *psi));
            return F::conj(F::imp(F::know(i, both), split), F::imp(split, F::know(i, both)));
        }
    }
    throw std::invalid_argument("bad schema");
}

namespace {

bool is_know(const Formula& f) { return f.kind() == Kind::Know; }

}  // namespace

std::optional<SchemaInstance> match_schema(SchemaName s, const Formula& f) {
    using F = Formula;
    switch (s) {
        case SchemaName::AxK: {
            // (K_i(phi->psi) & K_i phi) -> K_i psi
            if (f.kind() != Kind::Imp || f.lhs().kind() != Kind::And) return std::nullopt;
            const F l1 = f.lhs().lhs();
            const F l2 = f.lhs().rhs();
            const F r = f.rhs();
            if (!is_know(l1) || !is_know(l2) || !is_know(r)) return std::nullopt;
            if (l1.agent() != l2.agent() || l1.agent() != r.agent()) return std::nullopt;
            if (l1.body().kind() != Kind::Imp) return std::nullopt;
            const F phi = l1.body().lhs();
            const F psi = l1.body().rhs();
            if (!(l2.body() == phi) || !(r.body() == psi)) return std::nullopt;
            return SchemaInstance{l1.agent(), phi, psi};
        }
        case SchemaName::AxT: {
            if (f.kind() != Kind::Imp || !is_know(f.lhs())) return std::nullopt;
            if (!(f.lhs().body() == f.rhs())) return std::nullopt;
            return SchemaInstance{f.lhs().agent(), f.rhs(), F::top()};
        }
        case SchemaName::Ax4: {
            if (f.kind() != Kind::Imp || !is_know(f.lhs()) || !is_know(f.rhs())) return std::nullopt;
            const F r = f.rhs();
            if (r.agent() != f.lhs().agent() || !is_know(r.body())) return std::nullopt;
            if (r.body().agent() != r.agent() || !(r.body().body() == f.lhs().body())) return std::nullopt;
            return SchemaInstance{f.lhs().agent(), f.lhs().body(), F::top()};
        }
        case SchemaName::Ax2: {
            // ~K_i ~K_i phi -> K_i ~K_i ~phi
            if (f.kind() != Kind::Imp || !f.lhs().is_neg()) return std::nullopt;
            const F lk = f.lhs().lhs();
            if (!is_know(lk) || !lk.body().is_neg() || !is_know(lk.body().lhs())) return std::nullopt;
            const F inner = lk.body().lhs();  // K_i phi
            if (inner.agent() != lk.agent()) return std::nullopt;
            const F phi = inner.body();
            const Agent i = lk.agent();
            if (!(f == instantiate_schema(SchemaName::Ax2, i, phi))) return std::nullopt;
            return SchemaInstance{i, phi, F::top()};
        }
        case SchemaName::AxN: {
            if (!is_know(f) || !f.body().is_top()) return std::nullopt;
            return SchemaInstance{f.agent(), F::top(), F::top()};
        }
        case SchemaName::AxR: {
            if (f.kind() != Kind::And || f.lhs().kind() != Kind::Imp) return std::nullopt;
            const F fwd = f.lhs();
            if (!is_know(fwd.lhs()) || fwd.lhs().body().kind() != Kind::And) return std::nullopt;
            const Agent i = fwd.lhs().agent();
            const F phi = fwd.lhs().body().lhs();
            const F psi = fwd.lhs().body().rhs();
            if (!(f == instantiate_schema(SchemaName::AxR, i, phi, psi))) return std::nullopt;
            return SchemaInstance{i, phi, psi};
        }
    }
    return std::nullopt;
}

}  // namespace epi
