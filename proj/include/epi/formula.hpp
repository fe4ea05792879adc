#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epi/expected.hpp"

namespace epi {

using Agent = std::uint32_t;

enum class Kind : std::uint8_t { Bottom, Var, Or, And, Imp, Know };

// Immutable formula tree with structural equality, hashing and a total order.
// Negation, verum, possibility and belief are not node kinds; they are built
// from Imp/Bottom/Know and recognized by shape (is_neg / is_top).
class Formula {
public:
    Formula();  // Bottom

    static Formula bottom();
    static Formula var(std::string name);
    static Formula disj(Formula a, Formula b);
    static Formula conj(Formula a, Formula b);
    static Formula imp(Formula a, Formula b);
    static Formula know(Agent i, Formula body);

    // Sugar, desugared on construction:
    static Formula neg(Formula a);           // a -> false
    static Formula top();                    // false -> false
    static Formula poss(Agent i, Formula a); // ~K_i ~a
    static Formula bel(Agent i, Formula a);  // ~K_i ~K_i a

    Kind kind() const;
    const std::string& name() const;  // Var only
    Agent agent() const;              // Know only
    Formula lhs() const;              // Or/And/Imp
    Formula rhs() const;              // Or/And/Imp
    Formula body() const;             // Know only

    bool is_neg() const;  // Imp(x, Bottom)
    bool is_top() const;  // Imp(Bottom, Bottom)

    std::uint32_t size() const;  // node count
    std::size_t hash() const;

    bool operator==(const Formula& o) const;
    std::strong_ordering operator<=>(const Formula& o) const;

    struct Node;  // defined in formula.cpp; opaque elsewhere

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// ---- folds ----------------------------------------------------------------

// imply([p1..pk], g) = p1 -> (p2 -> ... -> (pk -> g)); imply([], g) = g.
Formula imply(const std::vector<Formula>& ps, const Formula& goal);

// conjunct([p1..pk]) = p1 & (p2 & ... & (pk & true)); conjunct([]) = true.
// Right-nested with a trailing verum so list identities hold definitionally.
Formula conjunct(const std::vector<Formula>& ps);

// ---- subformula closure ----------------------------------------------------

// All subformulas in post-order of first occurrence (children before parent,
// duplicates kept once at their first position). The result is closed under
// subformulas and its order is deterministic.
std::vector<Formula> subformula_closure(const Formula& f);
std::vector<Formula> subformula_closure(const std::vector<Formula>& fs);

// ---- axiom schemas ---------------------------------------------------------

enum class SchemaName : std::uint8_t { AxK, AxT, Ax4, Ax2, AxN, AxR };

std::string_view schema_name(SchemaName s);

// Instantiation witness for match_schema; psi is top() for non-binary schemas.
struct SchemaInstance {
    Agent agent = 0;
    Formula phi;
    Formula psi;
};

// AxK: (K_i(phi->psi) & K_i phi) -> K_i psi
// AxT: K_i phi -> phi
// Ax4: K_i phi -> K_i K_i phi
// Ax2: ~K_i ~K_i phi -> K_i ~K_i ~phi
// AxN: K_i true                       (phi unused)
// AxR: (K_i(phi&psi) -> K_i phi & K_i psi) & (K_i phi & K_i psi -> K_i(phi&psi))
// psi must be supplied exactly for the binary schemas (AxK, AxR); otherwise
// throws std::invalid_argument (arity mismatch).
Formula instantiate_schema(SchemaName s, Agent i, const Formula& phi,
                           const std::optional<Formula>& psi = std::nullopt);

// Structural inverse of instantiate_schema: the unique instantiation that
// yields f, if any.
std::optional<SchemaInstance> match_schema(SchemaName s, const Formula& f);

// ---- concrete syntax -------------------------------------------------------

struct ParseError {
    std::size_t offset = 0;
    std::string message;
    std::vector<std::string> expected;

    std::string format() const;  // "offset N: message (expected ...)"
};

// Grammar (whitespace-insensitive, '->' right-associative, '|' and '&'
// left-associative, prefix ~/K/L/B bind tightest):
//   imp   := or ("->" imp)?
//   or    := and ("|" and)*
//   and   := unary ("&" unary)*
//   unary := "~" unary | ("K"|"L"|"B") nat unary | atom
//   atom  := "false" | "true" | ident | "(" imp ")"
//   ident := [a-z][a-z0-9_]*   (except the keywords)
Expected<Formula, ParseError> parse(std::string_view text);

// Minimal-parenthesis printer; prints "~x" for Imp(x, Bottom) and "true" for
// Imp(Bottom, Bottom). parse(render(f)) == f for every formula.
std::string render(const Formula& f);

}  // namespace epi
