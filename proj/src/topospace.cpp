#include "epi/topospace.hpp"

#include "text_lines.hpp"

#include <bit>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace epi {

namespace {

PointSet full_mask(std::uint32_t n) {
    return n >= 64 ? ~PointSet{0} : ((PointSet{1} << n) - 1);
}

std::string set_text(PointSet s) {
    std::string out = "{";
    bool first = true;
    for (PointSet m = s; m; m &= m - 1) {
        if (!first) out += ",";
        out += std::to_string(std::countr_zero(m));
        first = false;
    }
    return out + "}";
}

}  // namespace

std::optional<std::string> topology_violation(std::uint32_t num_points,
                                              const std::set<PointSet>& opens) {
    const PointSet full = full_mask(num_points);
    for (PointSet o : opens) {
        if (o & ~full) return "open " + set_text(o) + " is not a subset of the point set";
    }
    if (!opens.count(0)) return "empty set is not open";
    if (!opens.count(full)) return "full point set is not open";
    for (PointSet a : opens) {
        for (PointSet b : opens) {
            if (b <= a) continue;
            if (!opens.count(a | b))
                return "union of " + set_text(a) + " and " + set_text(b) + " is not open";
            if (!opens.count(a & b))
                return "intersection of " + set_text(a) + " and " + set_text(b) + " is not open";
        }
    }
    return std::nullopt;
}

bool is_topology(std::uint32_t num_points, const std::set<PointSet>& opens) {
    return !topology_violation(num_points, opens);
}

PointSet interior(const TopoModel& t, PointSet s) {
    PointSet out = 0;
    for (PointSet o : t.opens) {
        if ((o & ~s) == 0) out |= o;
    }
    return out;
}

PointSet min_open(const TopoModel& t, std::uint32_t w) {
    PointSet out = full_mask(t.num_points);
    const PointSet wbit = PointSet{1} << w;
    for (PointSet o : t.opens) {
        if (o & wbit) out &= o;
    }
    return out;
}

namespace {

PointSet truth_walk(const TopoModel& t, const Formula& f,
                    std::unordered_map<Formula, PointSet, FormulaHash>& memo) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    const PointSet full = full_mask(t.num_points);
    PointSet out = 0;
    switch (f.kind()) {
        case Kind::Bottom: out = 0; break;
        case Kind::Var: {
            auto v = t.valuation.find(f.name());
            out = v == t.valuation.end() ? 0 : (v->second & full);
            break;
        }
        case Kind::Or: out = truth_walk(t, f.lhs(), memo) | truth_walk(t, f.rhs(), memo); break;
        case Kind::And: out = truth_walk(t, f.lhs(), memo) & truth_walk(t, f.rhs(), memo); break;
        case Kind::Imp:
            out = (full & ~truth_walk(t, f.lhs(), memo)) | truth_walk(t, f.rhs(), memo);
            break;
        case Kind::Know:
            if (f.agent() != 0)
                throw std::invalid_argument(
                    "topo_truth_set: interior semantics read the box as K0, formula mentions K" +
                    std::to_string(f.agent()));
            out = interior(t, truth_walk(t, f.body(), memo));
            break;
    }
    memo.emplace(f, out);
    return out;
}

}  // namespace

PointSet topo_truth_set(const TopoModel& t, const Formula& f) {
    std::unordered_map<Formula, PointSet, FormulaHash> memo;
    return truth_walk(t, f, memo);
}

bool topo_eval(const TopoModel& t, std::uint32_t w, const Formula& f) {
    if (w >= t.num_points) throw std::out_of_range("topo_eval: point out of range");
    return (topo_truth_set(t, f) >> w) & 1;
}

Model specialization_frame(const TopoModel& t) {
    Model m;
    m.frame.num_worlds = t.num_points;
    Relation r;
    r.succ.reserve(t.num_points);
    for (std::uint32_t w = 0; w < t.num_points; ++w) r.succ.push_back(min_open(t, w));
    m.frame.rel[0] = std::move(r);
    for (const auto& [name, mask] : t.valuation)
        m.valuation[name] = mask & full_mask(t.num_points);
    return m;
}

const std::vector<std::vector<PointSet>>& topology_catalog(std::uint32_t n) {
    if (n < 1 || n > kTopologyCatalogCap)
        throw std::invalid_argument("topology_catalog: 1 <= n <= 4 required");
    static std::mutex mu;
    static std::map<std::uint32_t, std::vector<std::vector<PointSet>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const std::uint32_t subsets = 1u << n;
    const std::uint64_t families = std::uint64_t{1} << subsets;
    const std::uint64_t must = 1 | (std::uint64_t{1} << (subsets - 1));  // empty and full
    std::vector<std::vector<PointSet>> out;
    for (std::uint64_t fam = 0; fam < families; ++fam) {
        if ((fam & must) != must) continue;
        bool closed = true;
        for (std::uint64_t sa = fam; closed && sa; sa &= sa - 1) {
            const auto a = static_cast<PointSet>(std::countr_zero(sa));
            for (std::uint64_t sb = sa & (sa - 1); sb; sb &= sb - 1) {
                const auto b = static_cast<PointSet>(std::countr_zero(sb));
                if (!((fam >> (a | b)) & 1) || !((fam >> (a & b)) & 1)) {
                    closed = false;
                    break;
                }
            }
        }
        if (!closed) continue;
        std::vector<PointSet> opens;
        for (std::uint64_t s = fam; s; s &= s - 1)
            opens.push_back(static_cast<PointSet>(std::countr_zero(s)));
        out.push_back(std::move(opens));
    }
    return cache.emplace(n, std::move(out)).first->second;
}

// ---- files -----------------------------------------------------------------

std::string topo_to_text(const TopoModel& t) {
    std::string out = "points " + std::to_string(t.num_points) + "\n";
    const PointSet full = full_mask(t.num_points);
    for (PointSet o : t.opens) {
        out += "open:";
        for (PointSet m = o & full; m; m &= m - 1)
            out += " " + std::to_string(std::countr_zero(m));
        out += "\n";
    }
    for (const auto& [name, mask] : t.valuation) {
        out += "val " + name + ":";
        for (PointSet m = mask & full; m; m &= m - 1)
            out += " " + std::to_string(std::countr_zero(m));
        out += "\n";
    }
    return out;
}

using detail::LineScanner;
using detail::parse_nat;
using detail::split_ws;

Expected<TopoModel, ParseError> topo_from_text(std::string_view text) {
    TopoModel t;
    bool have_points = false;
    LineScanner scan{text};

    while (auto ln = scan.next()) {
        const auto [line, off] = *ln;
        const auto err = [off](std::string msg) { return ParseError{off, std::move(msg), {}}; };

        const std::size_t colon = line.find(':');
        std::string_view head = colon == std::string_view::npos ? line : line.substr(0, colon);
        const auto words = split_ws(head);
        if (words.empty()) return err("empty line");
        const std::string_view kw = words[0];

        if (kw == "points") {
            if (have_points) return err("duplicate 'points' line");
            std::uint64_t n = 0;
            if (colon != std::string_view::npos || words.size() != 2 || !parse_nat(words[1], n) ||
                n < 1 || n > kMaxPoints)
                return err("expected 'points N' with 1 <= N <= 64");
            t.num_points = static_cast<std::uint32_t>(n);
            have_points = true;
            continue;
        }
        if (!have_points) return err("'points N' must come first");

        if (kw == "open") {
            if (colon == std::string_view::npos || words.size() != 1)
                return err("expected 'open: a b ...'");
            PointSet mask = 0;
            for (std::string_view tok : split_ws(line.substr(colon + 1))) {
                std::uint64_t p = 0;
                if (!parse_nat(tok, p) || p >= t.num_points)
                    return err("point '" + std::string(tok) + "' out of range");
                mask |= PointSet{1} << p;
            }
            t.opens.insert(mask);
            continue;
        }
        if (kw == "val") {
            if (colon == std::string_view::npos || words.size() != 2)
                return err("expected 'val name: w ...'");
            const std::string name(words[1]);
            if (name.empty() || name[0] < 'a' || name[0] > 'z')
                return err("bad variable name '" + name + "'");
            if (t.valuation.count(name)) return err("duplicate variable '" + name + "'");
            PointSet mask = 0;
            for (std::string_view tok : split_ws(line.substr(colon + 1))) {
                std::uint64_t p = 0;
                if (!parse_nat(tok, p) || p >= t.num_points)
                    return err("point '" + std::string(tok) + "' out of range");
                mask |= PointSet{1} << p;
            }
            t.valuation.emplace(name, mask);
            continue;
        }
        return err("unknown line '" + std::string(kw) + "'");
    }

    if (!have_points) return ParseError{0, "missing 'points N' line", {}};
    return t;
}

}  // namespace epi
