#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epi/expected.hpp"
#include "epi/formula.hpp"

namespace epi {

using WorldId = std::uint32_t;
using WorldSet = std::uint64_t;  // bitmask over worlds

inline constexpr std::uint32_t kMaxWorlds = 64;
inline constexpr std::uint32_t kDefaultEnumWorldCap = 5;
inline constexpr std::uint32_t kDefaultValuationBitCap = 24;

// Accessibility relation in functional form: succ[w] is the bitmask of
// worlds reachable from w. Interchangeable with the pair-set view, which the
// file format and pairs() expose.
struct Relation {
    std::vector<WorldSet> succ;
};

enum class FrameClass : std::uint8_t {
    All,
    Reflexive,
    Transitive,
    Preorder,
    WeaklyDirected,
    WeaklyDirectedPreorder,
};

std::string_view frame_class_name(FrameClass cls);
std::optional<FrameClass> frame_class_from_name(std::string_view name);

struct Frame {
    std::uint32_t num_worlds = 0;
    std::map<Agent, Relation> rel;  // agents without an entry have the empty relation

    WorldSet successors(Agent i, WorldId w) const;
    bool edge(Agent i, WorldId a, WorldId b) const;
    void add_edge(Agent i, WorldId a, WorldId b);
    std::vector<std::pair<WorldId, WorldId>> pairs(Agent i) const;  // ascending
};

struct Model {
    Frame frame;
    std::map<std::string, WorldSet> valuation;  // absent variables are false everywhere
};

struct PointedModel {
    Model model;
    WorldId world = 0;
};

// Satisfaction at a world; K_i quantifies over R_i-successors.
// Throws std::out_of_range when w is not a world of m.
bool eval(const Model& m, WorldId w, const Formula& f);

// ---- frame classes ---------------------------------------------------------

bool is_reflexive(const Relation& r, std::uint32_t n);
bool is_transitive(const Relation& r, std::uint32_t n);
// forall x,y,z: xRy and xRz imply exists w with yRw and zRw
bool is_weakly_directed(const Relation& r, std::uint32_t n);

bool class_check(const Frame& fr, Agent i, FrameClass cls);
// Every agent that fr interprets (and, for Reflexive-including classes, the
// frame as a whole) — convenience over class_check for all mapped agents.
bool class_check_all(const Frame& fr, FrameClass cls);

// Smallest reflexive-transitive extension, per agent.
Frame refl_trans_closure(const Frame& fr);

// Adds one fresh world f with (w,f) for every world w (including (f,f)), per
// agent. Requires every agent relation to be a preorder (throws
// std::invalid_argument otherwise); the result is a weakly directed preorder.
Frame add_final_cluster(const Frame& fr);

// ---- enumeration -----------------------------------------------------------

// All relations on n worlds satisfying cls, encoded as bit-vectors
// (pair (a,b) <-> bit a*n+b), ascending. Cached per (n, cls). n <= 5.
const std::vector<std::uint64_t>& relation_catalog(std::uint32_t n, FrameClass cls);

Relation decode_relation(std::uint64_t bits, std::uint32_t n);
std::uint64_t encode_relation(const Relation& r, std::uint32_t n);

// Every labeled frame on worlds 0..n-1 whose agent relations all satisfy cls,
// in lexicographic order of the agents' relation bit-vectors (smallest agent
// varies slowest). Agents are deduplicated and sorted.
class FrameEnumerator {
public:
    FrameEnumerator(std::uint32_t n, std::vector<Agent> agents, FrameClass cls,
                    std::uint32_t world_cap = kDefaultEnumWorldCap);
    std::optional<Frame> next();

private:
    std::uint32_t n_;
    std::vector<Agent> agents_;
    const std::vector<std::uint64_t>* catalog_;
    std::vector<std::size_t> idx_;
    bool done_ = false;
};

// Every valuation of vars over the worlds of fr, as Models, in ascending
// bit-vector order (variable j of the sorted list occupies bits [j*n,(j+1)*n)).
class ValuationEnumerator {
public:
    ValuationEnumerator(Frame fr, std::vector<std::string> vars,
                        std::uint32_t bit_cap = kDefaultValuationBitCap);
    std::optional<Model> next();

    std::uint64_t total() const { return total_; }

private:
    Frame frame_;
    std::vector<std::string> vars_;
    std::uint64_t counter_ = 0;
    std::uint64_t total_ = 0;
};

// Schema validity on a frame: the instance on one fresh variable p holds at
// every world under every valuation of p. Only AxT, Ax4, Ax2 are meaningful
// here (throws std::invalid_argument otherwise). Single-variable instances
// suffice for the frame correspondences these schemas carry.
bool validates_schema(const Frame& fr, SchemaName s, Agent i);

// Seeded pseudo-random model, deterministic across platforms. Draws one
// relation per agent and one truth set per variable; repairs the relation up
// to cls (diagonal / transitive closure / final cluster as needed). For the
// weakly directed classes the final-cluster step adds one world, so the
// output has n+1 worlds there.
Model random_model(std::uint32_t n, const std::vector<Agent>& agents,
                   const std::vector<std::string>& vars, FrameClass cls, std::uint64_t seed);

// ---- file format -----------------------------------------------------------
//
//   # comment
//   worlds N
//   agent I: (a,b) (c,d) ...
//   val p: w1 w2 ...
//   world N            <- pointed models only
//
// '#' starts a comment line; blank lines are skipped. "worlds" must come
// first; agent and val lines may not repeat a label. The printer emits agents
// and variables sorted, pairs and worlds ascending, so print/parse round-trips
// exactly.

std::string model_to_text(const Model& m);
std::string pointed_model_to_text(const PointedModel& pm);

Expected<Model, ParseError> model_from_text(std::string_view text);
Expected<PointedModel, ParseError> pointed_model_from_text(std::string_view text);
// Shared reader: pointed iff the optional world is present.
Expected<std::pair<Model, std::optional<WorldId>>, ParseError> parse_model_file(std::string_view text);

// ---- fast evaluation core ----------------------------------------------------

// Formula compiled to a post-order op list over deduplicated subformulas, for
// repeated evaluation against many frames/valuations. truth_set returns the
// bitmask of worlds satisfying the formula.
class CompiledFormula {
public:
    explicit CompiledFormula(const Formula& f);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Agent>& agents() const { return agents_; }
    std::size_t op_count() const { return ops_.size(); }

    // rows[k] points to the n successor masks of agents()[k]; vals[j] is the
    // truth mask of vars()[j]; scratch must hold op_count() entries.
    WorldSet truth_set(std::uint32_t n, const WorldSet* const* rows, const WorldSet* vals,
                       WorldSet* scratch) const;
    // Convenience adapter (allocates its own scratch).
    WorldSet truth_set(const Model& m) const;

private:
    struct Op {
        Kind kind;
        std::uint16_t a = 0;
        std::uint16_t b = 0;
        std::uint16_t idx = 0;  // var slot (Var) or agent slot (Know)
    };
    std::vector<Op> ops_;
    std::vector<std::string> vars_;
    std::vector<Agent> agents_;
};

}  // namespace epi
