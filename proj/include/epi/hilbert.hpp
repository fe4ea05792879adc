#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "epi/expected.hpp"
#include "epi/formula.hpp"

namespace epi {

// Normal modal system: K plus a schema set. AxK is always a member; the
// presets below are the systems the rest of the library talks about.
struct System {
    std::set<SchemaName> schemas;

    static System k() { return {{SchemaName::AxK}}; }
    static System s4() { return {{SchemaName::AxK, SchemaName::AxT, SchemaName::Ax4}}; }
    static System k2() { return {{SchemaName::AxK, SchemaName::Ax2}}; }
    static System s42() {
        return {{SchemaName::AxK, SchemaName::AxT, SchemaName::Ax4, SchemaName::Ax2}};
    }
};

// Preset lookup by certificate header name (K, S4, K2, S42).
std::optional<System> system_from_name(std::string_view name);
// Inverse for the presets; "custom" otherwise.
std::string system_name(const System& sys);

enum class RuleKind : std::uint8_t { Taut, Axiom, Mp, Nec };

// One proof line. Step references j, k are 1-based indices of strictly
// earlier steps, matching the certificate numbering.
struct Step {
    Formula formula;
    RuleKind rule = RuleKind::Taut;
    SchemaName schema = SchemaName::AxK;  // Axiom only
    std::size_t j = 0;                    // Mp: implication step; Nec: premise step
    std::size_t k = 0;                    // Mp: antecedent step
    Agent agent = 0;                      // Nec only

    static Step taut(Formula f);
    static Step axiom(SchemaName s, Formula f);
    static Step mp(Formula f, std::size_t j, std::size_t k);
    static Step nec(Formula f, Agent i, std::size_t j);
};

struct Proof {
    std::vector<Step> steps;
};

inline constexpr std::size_t kTautologyAtomCap = 20;

// Raised when the propositional skeleton has more distinct atoms than the
// truth-table check is willing to grind through.
struct TooManyAtoms : std::runtime_error {
    std::size_t atoms;
    explicit TooManyAtoms(std::size_t n)
        : std::runtime_error("tautology check over " + std::to_string(n) +
                             " atoms exceeds the cap of " + std::to_string(kTautologyAtomCap)),
          atoms(n) {}
};

// Truth-table validity of the propositional skeleton: maximal Know-headed
// subformulas collapse to fresh atoms, equal subformulas sharing one atom.
// Throws TooManyAtoms past kTautologyAtomCap.
bool is_tautology(const Formula& f);

struct CheckError {
    std::size_t step = 0;  // 1-based, 0 when the proof as a whole is at fault
    std::string reason;

    std::string format() const;  // "line N: reason"
};

// Kernel: verifies every step against sys and returns the final formula.
//   Taut      is_tautology holds
//   Axiom(s)  s in sys.schemas and the formula matches the schema template
//   Mp(j,k)   step j is Imp(A,B), step k is A, this formula is B
//   Nec(j,i)  this formula is Know(i, formula of step j)
Expected<Formula, CheckError> check_proof(const System& sys, const Proof& pr);

// Premise-aware wrapper: accepts when the proof's final formula is
// imply(ps, goal) for some selection ps of premises in order (repetition
// allowed, goal matched greedily).
Expected<Formula, CheckError> check_deduction(const System& sys,
                                              const std::vector<Formula>& premises,
                                              const Formula& goal, const Proof& pr);

// Append-only proof assembly. Indices returned are 1-based and stable, so
// they can feed Mp/Nec references directly. Shape mismatches in mp/nec throw
// std::logic_error: they indicate a bug in the calling builder, not bad user
// input (the kernel re-checks everything anyway).
class ProofBuilder {
public:
    std::size_t taut(Formula f);
    std::size_t axiom(SchemaName s, Agent i, const Formula& phi,
                      const std::optional<Formula>& psi = std::nullopt);
    std::size_t axiom_instance(SchemaName s, Formula instance);
    std::size_t mp(std::size_t imp_step, std::size_t ant_step);
    std::size_t nec(Agent i, std::size_t step);
    // Appends a whole checked proof, shifting its internal references.
    // Returns the new index of its final step.
    std::size_t splice(const Proof& pr);

    const Formula& formula(std::size_t step) const;  // 1-based
    std::size_t size() const { return steps_.size(); }
    Proof build() const { return Proof{steps_}; }

private:
    std::size_t push(Step st);
    std::vector<Step> steps_;
};

// ---- certificate files -------------------------------------------------------
//
//   system S42
//   1: K1 p -> p ; AXT
//   2: (K1 p -> p) -> (K1 p -> K1 p -> p) ; TAUT
//   3: K1 p -> K1 p -> p ; MP 2 1
//
// Lines `n: <formula> ; <rule>`, n ascending from 1; rules TAUT, AXK, AXT,
// AX4, AX2, MP j k, NEC i j (agent first). '#' comments allowed.

std::string proof_to_text(const System& sys, const Proof& pr);
Expected<std::pair<System, Proof>, ParseError> proof_from_text(std::string_view text);

}  // namespace epi
