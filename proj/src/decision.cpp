#include "epi/decision.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace epi {

namespace {

WorldSet full_mask(std::uint32_t n) {
    return n >= 64 ? ~WorldSet{0} : (WorldSet{1} << n) - 1;
}

}  // namespace

SearchResult bounded_countermodel(FrameClass cls, const Formula& f, std::uint32_t max_worlds) {
    if (max_worlds > kDefaultSearchWorldCap)
        throw std::invalid_argument("bounded_countermodel: world bound over cap");
    const CompiledFormula cf(f);
    if (cf.vars().size() > kDefaultSearchVarCap)
        throw std::invalid_argument("bounded_countermodel: too many variables");

    std::vector<WorldSet> scratch(cf.op_count());
    std::vector<const WorldSet*> rows(cf.agents().size());
    std::vector<WorldSet> vals(cf.vars().size());

    for (std::uint32_t n = 1; n <= max_worlds; ++n) {
        const WorldSet full = full_mask(n);
        FrameEnumerator frames(n, cf.agents(), cls);
        while (auto fr = frames.next()) {
            for (std::size_t k = 0; k < cf.agents().size(); ++k)
                rows[k] = fr->rel.at(cf.agents()[k]).succ.data();
            const std::uint64_t vtotal = std::uint64_t{1}
                                         << (cf.vars().size() * static_cast<std::uint64_t>(n));
            for (std::uint64_t v = 0; v < vtotal; ++v) {
                for (std::size_t j = 0; j < vals.size(); ++j)
                    vals[j] = (v >> (j * n)) & full;
                const WorldSet truth =
                    cf.truth_set(n, rows.data(), vals.data(), scratch.data());
                if (truth == full) continue;
                Model m;
                m.frame = *fr;
                for (std::size_t j = 0; j < vals.size(); ++j)
                    m.valuation.emplace(cf.vars()[j], vals[j]);
                const WorldId w =
                    static_cast<WorldId>(std::countr_zero(~truth & full));
                return SearchResult{PointedModel{std::move(m), w}, max_worlds};
            }
        }
    }
    return SearchResult{std::nullopt, max_worlds};
}

bool consistent(Logic logic, const std::vector<Formula>& gamma) {
    return tableau_sat(logic, conjunct(gamma)).sat;
}

std::vector<Formula> FiniteMcs::members() const {
    std::vector<Formula> out;
    out.reserve(base.size());
    for (std::size_t j = 0; j < base.size(); ++j)
        out.push_back((negbits >> j) & 1 ? Formula::neg(base[j]) : base[j]);
    return out;
}

bool FiniteMcs::contains(const Formula& f) const {
    for (std::size_t j = 0; j < base.size(); ++j) {
        const bool negd = (negbits >> j) & 1;
        if (!negd && base[j] == f) return true;
        if (negd && Formula::neg(base[j]) == f) return true;
    }
    return false;
}

namespace {

std::vector<Formula> closed_base(const std::vector<Formula>& closure) {
    std::vector<Formula> base = subformula_closure(closure);
    if (base.size() > kMcsBaseCap)
        throw std::invalid_argument("mcs: closed base exceeds " + std::to_string(kMcsBaseCap) +
                                    " formulas");
    return base;
}

}  // namespace

std::vector<FiniteMcs> enumerate_mcs(Logic logic, const std::vector<Formula>& closure) {
    const std::vector<Formula> base = closed_base(closure);
    std::vector<FiniteMcs> out;
    for (std::uint64_t sign = 0; sign < (std::uint64_t{1} << base.size()); ++sign) {
        const FiniteMcs cand{base, sign};
        if (consistent(logic, cand.members())) out.push_back(cand);
    }
    return out;
}

FiniteMcs extend_mcs(Logic logic, const std::vector<Formula>& seed,
                     const std::vector<Formula>& closure) {
    const std::vector<Formula> base = closed_base(closure);

    // sign pins from the seed: +1 positive, -1 negated, 0 free
    std::vector<int> pin(base.size(), 0);
    for (const Formula& s : seed) {
        bool placed = false;
        for (std::size_t j = 0; j < base.size(); ++j) {
            if (base[j] == s) {
                pin[j] = +1;
                placed = true;
            } else if (Formula::neg(base[j]) == s) {
                pin[j] = -1;
                placed = true;
            }
        }
        if (!placed)
            throw std::invalid_argument("extend_mcs: seed formula outside closure and negations");
    }
    if (!consistent(logic, seed)) throw std::invalid_argument("extend_mcs: inconsistent seed");

    std::vector<Formula> current = seed;
    std::uint64_t negbits = 0;
    for (std::size_t j = 0; j < base.size(); ++j) {
        if (pin[j] > 0) continue;
        if (pin[j] < 0) {
            negbits |= std::uint64_t{1} << j;
            continue;
        }
        std::vector<Formula> trial = current;
        trial.push_back(base[j]);
        if (consistent(logic, trial)) {
            current = std::move(trial);
        } else {
            negbits |= std::uint64_t{1} << j;
            current.push_back(Formula::neg(base[j]));
        }
    }
    return FiniteMcs{base, negbits};
}

}  // namespace epi
