#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "epi/hilbert.hpp"

namespace epi {

// Derived rules. Each appends its derivation to the builder and returns the
// 1-based index of the step carrying the stated theorem. Everything here
// needs only AxK (plus whatever the referenced steps needed).

// K_i(phi -> psi) -> (K_i phi -> K_i psi), the implication form of AxK.
std::size_t derive_impl_k(ProofBuilder& b, Agent i, const Formula& phi, const Formula& psi);
// From step `ab` proving A -> B: K_i A -> K_i B.
std::size_t derive_rk(ProofBuilder& b, Agent i, std::size_t ab);
// From A -> B and B -> C: A -> C.
std::size_t derive_chain(ProofBuilder& b, std::size_t ab, std::size_t bc);
// From A -> B: ~B -> ~A.
std::size_t derive_contrapose(ProofBuilder& b, std::size_t ab);
// From A -> B and A -> C: A -> (B & C).
std::size_t derive_conj_imp_intro(ProofBuilder& b, std::size_t ab, std::size_t ac);
// From A -> B: L_i A -> L_i B.
std::size_t derive_l_mono(ProofBuilder& b, Agent i, std::size_t ab);
// phi -> L_i phi. Uses AxT.
std::size_t derive_t_dual(ProofBuilder& b, Agent i, const Formula& phi);
// (K_i phi & K_i psi) -> K_i(phi & psi).
std::size_t derive_box_conj_intro(ProofBuilder& b, Agent i, const Formula& phi,
                                  const Formula& psi);
// K_i(phi & psi) -> (K_i phi & K_i psi).
std::size_t derive_box_over_and(ProofBuilder& b, Agent i, const Formula& phi, const Formula& psi);

// ---- packaged derivations ----------------------------------------------------

enum class ConvertDirection : std::uint8_t { ImplyToConjunct, ConjunctToImply };

// Converts a proof of imply(psis, phi) into one of conjunct(psis) -> phi, or
// back, by splicing the source and bridging with one tautology. The source
// must check in sys and end in the expected form; std::invalid_argument
// otherwise.
Proof prove_imply_conjunct_equiv(const System& sys, const std::vector<Formula>& psis,
                                 const Formula& phi, ConvertDirection dir, const Proof& source);

inline constexpr std::size_t kConjunctListCap = 8;

// K_i(conjunct(psis)) -> conjunct(K_i each), and the converse. The schemas
// used are K's, so the proofs check in any sys; each builder re-checks its
// own output against sys before returning. Lists longer than
// kConjunctListCap throw std::invalid_argument.
std::pair<Proof, Proof> prove_K_over_conjunct(const System& sys, Agent i,
                                              const std::vector<Formula>& psis);

// ((K_i phi & K_i psi) -> theta) -> (K_i(phi & psi) -> theta), in K.
Proof prove_K_conj_imply_factor(const System& sys, Agent i, const Formula& phi,
                                const Formula& psi, const Formula& theta);

// (K_i phi & L_i psi) -> L_i(phi & psi), in K: necessitate the tautology
// phi -> (~(phi & psi) -> ~psi), distribute twice, close propositionally.
Proof prove_K_thm(const System& sys, Agent i, const Formula& phi, const Formula& psi);

// Belief principles with B_i read as L_i K_i. The first needs AxT, the rest
// Ax4/Ax2, so they live in S4.2.
Proof prove_knowledge_implies_belief(Agent i, const Formula& phi);  // K p -> B p
Proof prove_belief_consistency(Agent i, const Formula& phi);        // B p -> ~B ~p
Proof prove_positive_introspection(Agent i, const Formula& phi);    // B p -> K B p
Proof prove_negative_introspection(Agent i, const Formula& phi);    // ~B p -> K ~B p
Proof prove_strong_belief(Agent i, const Formula& phi);             // B p -> B K p

struct NamedTheorem {
    std::string name;
    System system;  // smallest preset the proof checks in
    Proof proof;
};

// The stock theorem battery: schema instances, derived-rule outputs, the five
// belief principles, K_thm and the factoring lemma. Single-agent (agent 1).
std::vector<NamedTheorem> bundled_theorem_suite();

// Uniform random formula, depth-bounded, over the given vocabulary.
// agents empty means no Know nodes.
Formula random_formula(std::mt19937_64& eng, std::uint32_t depth,
                       const std::vector<std::string>& vars, const std::vector<Agent>& agents);

// Seeded stream of checking S4 proofs (axiom draws, tautology templates,
// necessitation, opportunistic MP) used by the translation property runs.
Proof random_s4_proof(std::uint64_t seed, std::size_t target_steps);

}  // namespace epi
