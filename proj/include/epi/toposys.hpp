#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epi/expected.hpp"
#include "epi/formula.hpp"
#include "epi/hilbert.hpp"

namespace epi {

// Interior-style axiomatization of S4: necessity of truth (N), the box/meet
// exchange (R), factivity (T), idempotence (4), with modus ponens and the
// monotonicity rule RM in place of necessitation and the K axiom.
enum class TopoRuleKind : std::uint8_t { Taut, AxN, AxR, AxT, Ax4, Mp, Rm };

struct TopoStep {
    Formula formula;
    TopoRuleKind rule = TopoRuleKind::Taut;
    std::size_t j = 0;  // Mp: implication step; Rm: premise step
    std::size_t k = 0;  // Mp: antecedent step
    Agent agent = 0;    // Rm only

    static TopoStep taut(Formula f);
    static TopoStep axiom(TopoRuleKind rule, Formula f);  // AxN, AxR, AxT, Ax4
    static TopoStep mp(Formula f, std::size_t j, std::size_t k);
    static TopoStep rm(Formula f, Agent i, std::size_t j);
};

struct TopoProof {
    std::vector<TopoStep> steps;
};

// Stepwise verification:
//   AxN      formula is Know(i, true)
//   AxR      Know(i, a & b) <-> (Know(i,a) & Know(i,b)), as two implications
//   AxT/Ax4  usual schema shapes
//   Rm(j,i)  step j is Imp(A,B), formula is Imp(Know(i,A), Know(i,B))
// Taut and Mp as in the Hilbert kernel.
Expected<Formula, CheckError> check_topo_proof(const TopoProof& pr);

// Mirror of ProofBuilder for the topo rule set. 1-based indices; shape
// mismatches throw std::logic_error.
class TopoProofBuilder {
public:
    std::size_t taut(Formula f);
    std::size_t ax_n(Agent i);
    std::size_t ax_r(Agent i, const Formula& phi, const Formula& psi);
    std::size_t ax_t(Agent i, const Formula& phi);
    std::size_t ax_4(Agent i, const Formula& phi);
    std::size_t axiom_instance(TopoRuleKind rule, Formula instance);
    std::size_t mp(std::size_t imp_step, std::size_t ant_step);
    std::size_t rm(Agent i, std::size_t imp_step);
    std::size_t splice(const TopoProof& pr);

    const Formula& formula(std::size_t step) const;
    std::size_t size() const { return steps_.size(); }
    TopoProof build() const { return TopoProof{steps_}; }

private:
    std::size_t push(TopoStep st);
    std::vector<TopoStep> steps_;
};

// (K_i phi & K_i(phi -> psi)) -> K_i psi, derived from Taut + RM + AxR.
TopoProof prove_axiom_K_topo(Agent i, const Formula& phi, const Formula& psi);

// From a checking proof of phi: a proof of Know(i, phi), via T -> phi and AxN.
// Throws std::invalid_argument when pr does not check.
TopoProof prove_nec_topo(Agent i, const TopoProof& pr);

// Certificate translations. Each requires its input to check in the source
// kernel (std::invalid_argument otherwise) and yields a proof checking in the
// target kernel with the identical final formula.
TopoProof s4_to_topo(const Proof& pr);
Proof topo_to_s4(const TopoProof& pr);

// Named native topo theorems exercising every rule (for the equivalence runs).
std::vector<std::pair<std::string, TopoProof>> bundled_topo_suite();

// Seeded stream of checking topo proofs.
TopoProof random_topo_proof(std::uint64_t seed, std::size_t target_steps);

// Certificate text: header `system TOPOS4`, rules TAUT, AXN, AXR, AXT, AX4,
// MP j k, RM i j; same line shape as the Hilbert format.
std::string topo_proof_to_text(const TopoProof& pr);
Expected<TopoProof, ParseError> topo_proof_from_text(std::string_view text);

}  // namespace epi
