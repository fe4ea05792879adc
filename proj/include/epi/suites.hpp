#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epi {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;  // check/failure counts, one deterministic line
    long ms = 0;         // wall time, kept out of detail so reports stay byte-identical
};

// Acceptance checks, one per headline property. Each runs to completion and
// reports counts rather than stopping at the first violation.
SuiteResult run_s42_soundness();              // bundled theorems true on every wd-preorder model
SuiteResult run_correspondence();             // AxT/Ax4/Ax2 vs reflexive/transitive/weakly-directed
SuiteResult run_ax2_witnesses();              // fork countermodel, wd exhaustion, the S5 separator
SuiteResult run_axiomatization_equivalence(); // certificate translation both ways
SuiteResult run_derived_rule_builders();      // randomized builder instances re-check
SuiteResult run_tableau_oracle();             // tableau vs exhaustive bounded search
SuiteResult run_finite_mcs();                 // MCS enumeration invariants, Lindenbaum extension
SuiteResult run_topological_bridge();         // interior semantics vs specialization Kripke view
SuiteResult run_parser_roundtrip();           // parse . render = id

std::vector<SuiteResult> run_all_suites();

// Front-end groups: soundness | correspondence | equivalence | oracle | all.
// nullopt for an unknown group name.
std::optional<std::vector<SuiteResult>> run_suite_group(std::string_view group);

}  // namespace epi
