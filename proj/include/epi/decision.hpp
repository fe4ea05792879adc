#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "epi/formula.hpp"
#include "epi/kripke.hpp"

namespace epi {

// Logics with an exact decision procedure here. There is none for the
// directed extension: its validity claims are backed by kernel certificates
// on one side and exhaustive bounded search on the other.
enum class Logic : std::uint8_t { K, S4 };

std::string_view logic_name(Logic l);
std::optional<Logic> logic_from_name(std::string_view name);

inline constexpr std::uint32_t kTableauFormulaSizeCap = 256;  // formula nodes
inline constexpr std::size_t kTableauNodeBudget = 1u << 16;   // tableau states
inline constexpr std::uint32_t kDefaultSearchWorldCap = 5;
inline constexpr std::uint32_t kDefaultSearchVarCap = 3;
inline constexpr std::size_t kMcsBaseCap = 12;

struct TableauResult {
    bool sat = false;
    std::optional<PointedModel> witness;  // engaged iff sat
};

// Satisfiability by tableau saturation. Propositional decomposition over
// negation-normal shapes; each surviving ~K_i x spawns an i-successor holding
// ~x plus every body of a K_i member (S4: plus the K_i members themselves);
// S4 adds the T-rule (K_i x contributes x) and blocks repeats by spawn-set
// identity against ancestors, looping back instead of recursing. Models are
// read off the state graph, reflexive-transitive closure applied for S4.
// A Sat witness satisfies f at its point and its frame passes class_check for
// the logic (S4: preorder per agent; K: anything).
// Throws std::invalid_argument over the size cap, std::runtime_error if the
// state budget is exhausted.
TableauResult tableau_sat(Logic logic, const Formula& f);

struct Decision {
    bool valid = false;
    std::optional<PointedModel> countermodel;  // engaged iff !valid
};

// Validity as unsatisfiability of the negation; the witness, when one exists,
// refutes f at its point.
Decision decide_valid(Logic logic, const Formula& f);

struct SearchResult {
    std::optional<PointedModel> countermodel;  // engaged iff a refutation was found
    std::uint32_t bound = 0;                   // exhausted world count otherwise
};

// Exhaustive refutation search over every labeled frame of the class on
// 1..max_worlds worlds (agents = those occurring in f, enumeration order as in
// FrameEnumerator) and every valuation of f's variables. Returns the first
// countermodel in frame order, then valuation order, then lowest world; an
// empty result certifies there is none within the bound.
// Caps: max_worlds <= 5, variables of f <= 3 (std::invalid_argument).
SearchResult bounded_countermodel(FrameClass cls, const Formula& f, std::uint32_t max_worlds);

// Joint satisfiability of a finite list, via tableau on its conjunction.
bool consistent(Logic logic, const std::vector<Formula>& gamma);

// Maximal consistent set over a finite closure: one of psi / ~psi per base
// formula. The base is listed in subformula_closure order; bit j of negbits
// set means base[j] is taken negated.
struct FiniteMcs {
    std::vector<Formula> base;
    std::uint64_t negbits = 0;

    std::vector<Formula> members() const;
    // Membership up to the chosen sign: f equals some member (so K1 p counts
    // only when base holds K1 p positively, ~K1 p only when negated).
    bool contains(const Formula& f) const;
};

// Every consistent sign choice over subformula_closure(seed_formulas), in
// ascending negbits order (the all-positive choice first). The closed base
// may hold at most kMcsBaseCap formulas (std::invalid_argument).
std::vector<FiniteMcs> enumerate_mcs(Logic logic, const std::vector<Formula>& closure);

// Finite Lindenbaum extension: greedily add base[j], falling back to its
// negation when inconsistent with what has accumulated, seed signs pinned
// first. seed must be consistent and drawn from base-or-negation
// (std::invalid_argument otherwise). The result contains the seed and occurs
// in enumerate_mcs(logic, closure).
FiniteMcs extend_mcs(Logic logic, const std::vector<Formula>& seed,
                     const std::vector<Formula>& closure);

}  // namespace epi
