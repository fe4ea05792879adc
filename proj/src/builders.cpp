#include "epi/builders.hpp"

#include <stdexcept>

namespace epi {

namespace {

Formula imp(const Formula& a, const Formula& b) { return Formula::imp(a, b); }
Formula conj(const Formula& a, const Formula& b) { return Formula::conj(a, b); }

// Postcondition guard: every packaged builder hands its output through here.
Proof checked(const System& sys, const Proof& pr) {
    auto r = check_proof(sys, pr);
    if (!r.ok()) throw std::logic_error("builder produced a broken proof: " + r.error().format());
    return pr;
}

}  // namespace

std::size_t derive_impl_k(ProofBuilder& b, Agent i, const Formula& phi, const Formula& psi) {
    const std::size_t ax = b.axiom(SchemaName::AxK, i, phi, psi);
    const Formula x = Formula::know(i, imp(phi, psi));
    const Formula y = Formula::know(i, phi);
    const Formula z = Formula::know(i, psi);
    const std::size_t t = b.taut(imp(b.formula(ax), imp(x, imp(y, z))));
    return b.mp(t, ax);
}

std::size_t derive_rk(ProofBuilder& b, Agent i, std::size_t ab) {
    const Formula f = b.formula(ab);
    if (f.kind() != Kind::Imp) throw std::logic_error("derive_rk: step is not an implication");
    const std::size_t n = b.nec(i, ab);
    const std::size_t ik = derive_impl_k(b, i, f.lhs(), f.rhs());
    return b.mp(ik, n);
}

std::size_t derive_chain(ProofBuilder& b, std::size_t ab, std::size_t bc) {
    const Formula fab = b.formula(ab);
    const Formula fbc = b.formula(bc);
    if (fab.kind() != Kind::Imp || fbc.kind() != Kind::Imp || !(fab.rhs() == fbc.lhs()))
        throw std::logic_error("derive_chain: steps do not compose");
    const std::size_t t =
        b.taut(imp(fab, imp(fbc, imp(fab.lhs(), fbc.rhs()))));
    return b.mp(b.mp(t, ab), bc);
}

std::size_t derive_contrapose(ProofBuilder& b, std::size_t ab) {
    const Formula f = b.formula(ab);
    if (f.kind() != Kind::Imp) throw std::logic_error("derive_contrapose: not an implication");
    const std::size_t t =
        b.taut(imp(f, imp(Formula::neg(f.rhs()), Formula::neg(f.lhs()))));
    return b.mp(t, ab);
}

std::size_t derive_conj_imp_intro(ProofBuilder& b, std::size_t ab, std::size_t ac) {
    const Formula fab = b.formula(ab);
    const Formula fac = b.formula(ac);
    if (fab.kind() != Kind::Imp || fac.kind() != Kind::Imp || !(fab.lhs() == fac.lhs()))
        throw std::logic_error("derive_conj_imp_intro: antecedents differ");
    const std::size_t t = b.taut(
        imp(fab, imp(fac, imp(fab.lhs(), conj(fab.rhs(), fac.rhs())))));
    return b.mp(b.mp(t, ab), ac);
}

std::size_t derive_l_mono(ProofBuilder& b, Agent i, std::size_t ab) {
    const std::size_t c1 = derive_contrapose(b, ab);
    const std::size_t r = derive_rk(b, i, c1);
    return derive_contrapose(b, r);
}

std::size_t derive_t_dual(ProofBuilder& b, Agent i, const Formula& phi) {
    const std::size_t ax = b.axiom(SchemaName::AxT, i, Formula::neg(phi));
    const std::size_t c = derive_contrapose(b, ax);  // ~~phi -> ~K~phi
    const std::size_t t = b.taut(imp(phi, Formula::neg(Formula::neg(phi))));
    return derive_chain(b, t, c);
}

std::size_t derive_box_conj_intro(ProofBuilder& b, Agent i, const Formula& phi,
                                  const Formula& psi) {
    const Formula both = conj(phi, psi);
    const std::size_t t1 = b.taut(imp(phi, imp(psi, both)));
    const std::size_t r = derive_rk(b, i, t1);  // K phi -> K(psi -> phi&psi)
    const std::size_t ik = derive_impl_k(b, i, psi, both);
    const std::size_t ch = derive_chain(b, r, ik);  // K phi -> (K psi -> K(phi&psi))
    const Formula target = imp(conj(Formula::know(i, phi), Formula::know(i, psi)),
                               Formula::know(i, both));
    const std::size_t t2 = b.taut(imp(b.formula(ch), target));
    return b.mp(t2, ch);
}

std::size_t derive_box_over_and(ProofBuilder& b, Agent i, const Formula& phi,
                                const Formula& psi) {
    const Formula both = conj(phi, psi);
    const std::size_t r1 = derive_rk(b, i, b.taut(imp(both, phi)));
    const std::size_t r2 = derive_rk(b, i, b.taut(imp(both, psi)));
    return derive_conj_imp_intro(b, r1, r2);
}

// ---- packaged derivations ------------------------------------------------------

Proof prove_imply_conjunct_equiv(const System& sys, const std::vector<Formula>& psis,
                                 const Formula& phi, ConvertDirection dir, const Proof& source) {
    auto fin = check_proof(sys, source);
    if (!fin.ok())
        throw std::invalid_argument("source proof does not check: " + fin.error().format());
    const Formula imply_form = imply(psis, phi);
    const Formula conj_form = imp(conjunct(psis), phi);
    const Formula& expect = dir == ConvertDirection::ImplyToConjunct ? imply_form : conj_form;
    const Formula& target = dir == ConvertDirection::ImplyToConjunct ? conj_form : imply_form;
    if (!(fin.value() == expect))
        throw std::invalid_argument("source proof ends in " + render(fin.value()) + ", expected " +
                                    render(expect));
    ProofBuilder b;
    const std::size_t s = b.splice(source);
    const std::size_t t = b.taut(imp(expect, target));
    b.mp(t, s);
    return checked(sys, b.build());
}

namespace {

// K_i conjunct(psis) -> conjunct(K_i psis), by induction on the list.
std::size_t conjunct_fwd(ProofBuilder& b, Agent i, const std::vector<Formula>& psis,
                         std::size_t from) {
    if (from == psis.size())
        return b.taut(imp(Formula::know(i, Formula::top()), Formula::top()));
    std::vector<Formula> rest(psis.begin() + static_cast<std::ptrdiff_t>(from) + 1, psis.end());
    const Formula& psi = psis[from];
    const Formula whole = conj(psi, conjunct(rest));
    const std::size_t proj1 = derive_rk(b, i, b.taut(imp(whole, psi)));
    const std::size_t proj2 = derive_rk(b, i, b.taut(imp(whole, conjunct(rest))));
    const std::size_t ih = conjunct_fwd(b, i, psis, from + 1);
    const std::size_t ch = derive_chain(b, proj2, ih);
    return derive_conj_imp_intro(b, proj1, ch);
}

// conjunct(K_i psis) -> K_i conjunct(psis).
std::size_t conjunct_bwd(ProofBuilder& b, Agent i, const std::vector<Formula>& psis,
                         std::size_t from) {
    const Formula top = Formula::top();
    if (from == psis.size()) {
        const std::size_t t1 = b.taut(top);
        const std::size_t n = b.nec(i, t1);
        const std::size_t t2 = b.taut(imp(b.formula(n), imp(top, b.formula(n))));
        return b.mp(t2, n);
    }
    std::vector<Formula> rest(psis.begin() + static_cast<std::ptrdiff_t>(from) + 1, psis.end());
    const Formula& psi = psis[from];
    const Formula c = conjunct(rest);
    std::vector<Formula> krest;
    krest.reserve(rest.size());
    for (const Formula& g : rest) krest.push_back(Formula::know(i, g));
    const std::size_t ih = conjunct_bwd(b, i, psis, from + 1);  // conjunct(krest) -> K c
    const std::size_t bci = derive_box_conj_intro(b, i, psi, c);
    const Formula target =
        imp(conj(Formula::know(i, psi), conjunct(krest)), Formula::know(i, conj(psi, c)));
    const std::size_t t = b.taut(imp(b.formula(ih), imp(b.formula(bci), target)));
    return b.mp(b.mp(t, ih), bci);
}

}  // namespace

std::pair<Proof, Proof> prove_K_over_conjunct(const System& sys, Agent i,
                                              const std::vector<Formula>& psis) {
    if (psis.size() > kConjunctListCap)
        throw std::invalid_argument("prove_K_over_conjunct: list longer than cap " +
                                    std::to_string(kConjunctListCap));
    ProofBuilder fwd;
    conjunct_fwd(fwd, i, psis, 0);
    ProofBuilder bwd;
    conjunct_bwd(bwd, i, psis, 0);
    return {checked(sys, fwd.build()), checked(sys, bwd.build())};
}

Proof prove_K_conj_imply_factor(const System& sys, Agent i, const Formula& phi,
                                const Formula& psi, const Formula& theta) {
    ProofBuilder b;
    const std::size_t boa = derive_box_over_and(b, i, phi, psi);
    const Formula split = b.formula(boa);  // K(phi&psi) -> (K phi & K psi)
    const Formula target = imp(imp(split.rhs(), theta), imp(split.lhs(), theta));
    const std::size_t t = b.taut(imp(split, target));
    b.mp(t, boa);
    return checked(sys, b.build());
}

Proof prove_K_thm(const System& sys, Agent i, const Formula& phi, const Formula& psi) {
    ProofBuilder b;
    const Formula both = conj(phi, psi);
    const Formula inner = imp(Formula::neg(both), Formula::neg(psi));
    const std::size_t t1 = b.taut(imp(phi, inner));
    const std::size_t n = b.nec(i, t1);
    const std::size_t ik1 = derive_impl_k(b, i, phi, inner);
    const std::size_t m1 = b.mp(ik1, n);  // K phi -> K(~(phi&psi) -> ~psi)
    const std::size_t ik2 = derive_impl_k(b, i, Formula::neg(both), Formula::neg(psi));
    const std::size_t ch = derive_chain(b, m1, ik2);  // K phi -> (K~(phi&psi) -> K~psi)
    const Formula target = imp(conj(Formula::know(i, phi), Formula::poss(i, psi)),
                               Formula::poss(i, both));
    const std::size_t t2 = b.taut(imp(b.formula(ch), target));
    b.mp(t2, ch);
    return checked(sys, b.build());
}

// ---- belief principles ----------------------------------------------------------

Proof prove_knowledge_implies_belief(Agent i, const Formula& phi) {
    ProofBuilder b;
    derive_t_dual(b, i, Formula::know(i, phi));
    return checked(System::s42(), b.build());
}

Proof prove_belief_consistency(Agent i, const Formula& phi) {
    ProofBuilder b;
    const std::size_t a2 = b.axiom(SchemaName::Ax2, i, phi);  // B phi -> K L phi
    const Formula klphi = b.formula(a2).rhs();
    const std::size_t t = b.taut(imp(klphi, Formula::neg(Formula::neg(klphi))));
    derive_chain(b, a2, t);
    return checked(System::s42(), b.build());
}

Proof prove_positive_introspection(Agent i, const Formula& phi) {
    ProofBuilder b;
    const std::size_t a4 = b.axiom(SchemaName::Ax4, i, phi);
    const std::size_t lm = derive_l_mono(b, i, a4);  // L K phi -> L K K phi
    const std::size_t a2 = b.axiom(SchemaName::Ax2, i, Formula::know(i, phi));
    derive_chain(b, lm, a2);
    return checked(System::s42(), b.build());
}

Proof prove_negative_introspection(Agent i, const Formula& phi) {
    ProofBuilder b;
    const Formula x = Formula::know(i, Formula::neg(Formula::know(i, phi)));  // K~K phi
    const Formula nnx = Formula::neg(Formula::neg(x));
    const std::size_t t1 = b.taut(imp(nnx, x));
    const std::size_t a4 = b.axiom(SchemaName::Ax4, i, Formula::neg(Formula::know(i, phi)));
    const std::size_t ch1 = derive_chain(b, t1, a4);  // ~~x -> K x
    const std::size_t t2 = b.taut(imp(x, nnx));
    const std::size_t rk2 = derive_rk(b, i, t2);  // K x -> K ~~x
    derive_chain(b, ch1, rk2);
    return checked(System::s42(), b.build());
}

Proof prove_strong_belief(Agent i, const Formula& phi) {
    ProofBuilder b;
    const std::size_t a4 = b.axiom(SchemaName::Ax4, i, phi);
    derive_l_mono(b, i, a4);  // L K phi -> L K K phi
    return checked(System::s42(), b.build());
}

// ---- theorem battery -------------------------------------------------------------

namespace {

NamedTheorem named(std::string name, System sys, Proof pr) {
    return NamedTheorem{std::move(name), std::move(sys), std::move(pr)};
}

Proof one_axiom(SchemaName s, Agent i, const Formula& phi,
                const std::optional<Formula>& psi = std::nullopt) {
    ProofBuilder b;
    b.axiom(s, i, phi, psi);
    return b.build();
}

}  // namespace

std::vector<NamedTheorem> bundled_theorem_suite() {
    const Formula p = Formula::var("p");
    const Formula q = Formula::var("q");
    const Formula r = Formula::var("r");
    const Agent i = 1;
    const System k = System::k();
    const System s4 = System::s4();
    const System s42 = System::s42();

    std::vector<NamedTheorem> out;

    out.push_back(named("axk-p-q", k, one_axiom(SchemaName::AxK, i, p, q)));
    out.push_back(named("axt-p", s4, one_axiom(SchemaName::AxT, i, p)));
    out.push_back(named("ax4-p", s4, one_axiom(SchemaName::Ax4, i, p)));
    out.push_back(named("ax2-p", s42, one_axiom(SchemaName::Ax2, i, p)));
    out.push_back(named("ax2-conj", s42, one_axiom(SchemaName::Ax2, i, Formula::conj(p, q))));
    out.push_back(named("ax2-on-knowledge", s42, one_axiom(SchemaName::Ax2, i, Formula::know(i, p))));

    {
        ProofBuilder b;
        derive_impl_k(b, i, p, q);
        out.push_back(named("impl-k", k, b.build()));
    }
    {
        ProofBuilder b;
        derive_rk(b, i, b.taut(Formula::imp(Formula::conj(p, q), p)));
        out.push_back(named("rk-projection", k, b.build()));
    }
    {
        ProofBuilder b;
        b.nec(i, b.taut(Formula::top()));
        out.push_back(named("know-top", k, b.build()));
    }
    {
        ProofBuilder b;
        b.nec(i, b.nec(i, b.taut(Formula::top())));
        out.push_back(named("know-know-top", k, b.build()));
    }
    {
        ProofBuilder b;
        derive_t_dual(b, i, p);
        out.push_back(named("t-dual", s4, b.build()));
    }
    {
        // L L p -> L p: contrapose K~p -> K~~K~p
        ProofBuilder b;
        const Formula np = Formula::neg(p);
        const Formula knp = Formula::know(i, np);
        const std::size_t a4 = b.axiom(SchemaName::Ax4, i, np);  // K~p -> KK~p
        const std::size_t rk = derive_rk(b, i, b.taut(Formula::imp(knp, Formula::neg(Formula::neg(knp)))));
        const std::size_t ch = derive_chain(b, a4, rk);  // K~p -> K~~K~p
        derive_contrapose(b, ch);
        out.push_back(named("poss-idempotent", s4, b.build()));
    }
    out.push_back(named("k-thm", k, prove_K_thm(k, i, p, q)));
    out.push_back(named("k-thm-diagonal", k, prove_K_thm(k, i, p, p)));
    out.push_back(named("factor", k, prove_K_conj_imply_factor(k, i, p, q, r)));
    out.push_back(named("factor-bottom", k, prove_K_conj_imply_factor(k, i, p, q, Formula::bottom())));

    out.push_back(named("knowledge-implies-belief", s42, prove_knowledge_implies_belief(i, p)));
    out.push_back(named("belief-consistency", s42, prove_belief_consistency(i, p)));
    out.push_back(named("positive-introspection", s42, prove_positive_introspection(i, p)));
    out.push_back(named("negative-introspection", s42, prove_negative_introspection(i, p)));
    out.push_back(named("strong-belief", s42, prove_strong_belief(i, p)));
    out.push_back(named("knowledge-implies-belief-imp", s42,
                        prove_knowledge_implies_belief(i, Formula::imp(p, q))));

    {
        ProofBuilder b;
        derive_box_over_and(b, i, p, q);
        out.push_back(named("box-over-and", k, b.build()));
    }
    {
        ProofBuilder b;
        derive_box_conj_intro(b, i, p, q);
        out.push_back(named("box-conj-intro", k, b.build()));
    }

    const std::vector<std::vector<Formula>> lists = {{}, {p}, {p, q}};
    const char* tags[] = {"0", "1", "2"};
    for (std::size_t t = 0; t < lists.size(); ++t) {
        auto pair = prove_K_over_conjunct(k, i, lists[t]);
        out.push_back(named(std::string("k-over-conjunct-fwd-") + tags[t], k, pair.first));
        out.push_back(named(std::string("k-over-conjunct-bwd-") + tags[t], k, pair.second));
    }

    {
        ProofBuilder b;
        const std::size_t t1 = b.axiom(SchemaName::AxT, i, Formula::know(i, p));  // KKp -> Kp
        const std::size_t t2 = b.axiom(SchemaName::AxT, i, p);                    // Kp -> p
        derive_chain(b, t1, t2);
        out.push_back(named("know-know-elim", s4, b.build()));
    }
    {
        // B p -> B B p, from positive introspection and K X -> B X at X = B p
        ProofBuilder b;
        const std::size_t pi = b.splice(prove_positive_introspection(i, p));
        const std::size_t kb = b.splice(prove_knowledge_implies_belief(i, Formula::bel(i, p)));
        derive_chain(b, pi, kb);
        out.push_back(named("belief-idempotent", s42, b.build()));
    }
    {
        // B p -> L p
        ProofBuilder b;
        const std::size_t at = b.axiom(SchemaName::AxT, i, p);
        derive_l_mono(b, i, at);
        out.push_back(named("belief-implies-poss", s4, b.build()));
    }
    {
        // K(p->q) -> (L p -> L q)
        ProofBuilder b;
        const Formula np = Formula::neg(p);
        const Formula nq = Formula::neg(q);
        const std::size_t t = b.taut(Formula::imp(Formula::imp(p, q), Formula::imp(nq, np)));
        const std::size_t rk = derive_rk(b, i, t);
        const std::size_t ik = derive_impl_k(b, i, nq, np);
        const std::size_t ch = derive_chain(b, rk, ik);  // K(p->q) -> (K~q -> K~p)
        const Formula target = Formula::imp(Formula::know(i, Formula::imp(p, q)),
                                            Formula::imp(Formula::poss(i, p), Formula::poss(i, q)));
        b.mp(b.taut(Formula::imp(b.formula(ch), target)), ch);
        out.push_back(named("know-imp-poss-mono", k, b.build()));
    }
    {
        // conjunct form of the implication-shaped K axiom
        ProofBuilder b;
        derive_impl_k(b, i, p, q);
        const std::vector<Formula> prem = {Formula::know(i, Formula::imp(p, q)),
                                           Formula::know(i, p)};
        out.push_back(named("conjunct-form-k", k,
                            prove_imply_conjunct_equiv(k, prem, Formula::know(i, q),
                                                       ConvertDirection::ImplyToConjunct,
                                                       b.build())));
    }
    {
        ProofBuilder b;
        derive_l_mono(b, i, b.taut(Formula::imp(p, Formula::disj(p, q))));
        out.push_back(named("poss-mono-disj", k, b.build()));
    }

    return out;
}

// ---- random generation -------------------------------------------------------------

Formula random_formula(std::mt19937_64& eng, std::uint32_t depth,
                       const std::vector<std::string>& vars, const std::vector<Agent>& agents) {
    const auto pick = [&eng](std::uint64_t n) { return eng() % n; };
    if (depth == 0 || pick(5) == 0) {
        if (vars.empty() || pick(8) == 0) return Formula::bottom();
        return Formula::var(vars[pick(vars.size())]);
    }
    const std::uint64_t kinds = agents.empty() ? 3 : 4;
    switch (pick(kinds)) {
        case 0:
            return Formula::disj(random_formula(eng, depth - 1, vars, agents),
                                 random_formula(eng, depth - 1, vars, agents));
        case 1:
            return Formula::conj(random_formula(eng, depth - 1, vars, agents),
                                 random_formula(eng, depth - 1, vars, agents));
        case 2:
            return Formula::imp(random_formula(eng, depth - 1, vars, agents),
                                random_formula(eng, depth - 1, vars, agents));
        default:
            return Formula::know(agents[pick(agents.size())],
                                 random_formula(eng, depth - 1, vars, agents));
    }
}

Proof random_s4_proof(std::uint64_t seed, std::size_t target_steps) {
    std::mt19937_64 eng(seed);
    const std::vector<std::string> vars = {"p", "q"};
    const std::vector<Agent> agents = {1, 2};
    const auto pick = [&eng](std::uint64_t n) { return eng() % n; };
    const auto small = [&] { return random_formula(eng, 1 + static_cast<std::uint32_t>(pick(2)), vars, agents); };

    ProofBuilder b;
    while (b.size() < target_steps) {
        switch (pick(7)) {
            case 0: b.axiom(SchemaName::AxT, agents[pick(2)], small()); break;
            case 1: b.axiom(SchemaName::Ax4, agents[pick(2)], small()); break;
            case 2: b.axiom(SchemaName::AxK, agents[pick(2)], small(), small()); break;
            case 3: {
                const Formula a = small();
                const Formula c = small();
                switch (pick(4)) {
                    case 0: b.taut(Formula::imp(a, a)); break;
                    case 1: b.taut(Formula::imp(a, Formula::imp(c, a))); break;
                    case 2: b.taut(Formula::imp(Formula::conj(a, c), a)); break;
                    default: b.taut(Formula::imp(a, Formula::disj(a, c))); break;
                }
                break;
            }
            case 4:
                if (b.size() > 0) b.nec(agents[pick(2)], 1 + pick(b.size()));
                break;
            case 5: derive_impl_k(b, agents[pick(2)], small(), small()); break;
            default: {
                // opportunistic MP over existing steps
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

}  // namespace epi
