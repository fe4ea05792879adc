#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "epi/expected.hpp"
#include "epi/formula.hpp"
#include "epi/kripke.hpp"

namespace epi {

using PointSet = std::uint64_t;  // bitmask over points

inline constexpr std::uint32_t kMaxPoints = 64;
inline constexpr std::uint32_t kTopologyCatalogCap = 4;

// Finite topological model: points 0..num_points-1, a family of open sets,
// and a valuation. The family is only a topology when is_topology says so;
// the parser accepts any family so the checker can name the violation.
struct TopoModel {
    std::uint32_t num_points = 0;
    std::set<PointSet> opens;
    std::map<std::string, PointSet> valuation;  // absent variables are false everywhere
};

// Empty and full sets present, family closed under pairwise union and
// intersection. Finite space, so this is full closure.
bool is_topology(std::uint32_t num_points, const std::set<PointSet>& opens);

// First violated topology axiom, in checking order (empty member, full
// member, unions, intersections), or nullopt when none.
std::optional<std::string> topology_violation(std::uint32_t num_points,
                                              const std::set<PointSet>& opens);

// Largest open subset of s (union of all opens below s).
PointSet interior(const TopoModel& t, PointSet s);

// Intersection of all opens containing w; open itself in a finite space.
PointSet min_open(const TopoModel& t, std::uint32_t w);

// Points where f holds under interior semantics: Know(0, g) denotes the
// interior of the truth set of g. Throws std::invalid_argument when f
// mentions an agent other than 0 (single-box language).
PointSet topo_truth_set(const TopoModel& t, const Formula& f);

// Truth at one point. Throws std::out_of_range when w is not a point, and
// std::invalid_argument as in topo_truth_set.
bool topo_eval(const TopoModel& t, std::uint32_t w, const Formula& f);

// Kripke view of the space: agent-0 relation w R v iff v lies in min_open(w),
// valuation copied. Always a preorder; box along it equals the interior box.
Model specialization_frame(const TopoModel& t);

// Every topology on points 0..n-1 as a sorted open-set family, ascending by
// family bitmask (open set s <-> bit s). Cached per n. n <= 4.
const std::vector<std::vector<PointSet>>& topology_catalog(std::uint32_t n);

// ---- file format -----------------------------------------------------------
//
//   # comment
//   points N
//   open: a b c      <- one line per open set; "open:" alone is the empty set
//   val p: w1 w2
//
// "points" must come first; val labels may not repeat. The printer emits
// opens ascending and variables sorted, so print/parse round-trips exactly.

std::string topo_to_text(const TopoModel& t);
Expected<TopoModel, ParseError> topo_from_text(std::string_view text);

}  // namespace epi
