#include <doctest.h>

#include <string>
#include <vector>

#include "epi/builders.hpp"
#include "epi/formula.hpp"
#include "epi/hilbert.hpp"
#include "epi/toposys.hpp"

using namespace epi;

namespace {

Formula parse_ok(const std::string& text) {
    auto r = parse(text);
    REQUIRE(r.ok());
    return r.take();
}

Formula topo_final(const TopoProof& pr) {
    auto r = check_topo_proof(pr);
    REQUIRE_MESSAGE(r.ok(), (r.ok() ? std::string() : r.error().format()));
    return r.value();
}

}  // namespace

TEST_CASE("topo kernel accepts each rule") {
    TopoProofBuilder b;
    auto n = b.ax_n(1);
    CHECK(b.formula(n) == parse_ok("K1 true"));
    auto r = b.ax_r(1, Formula::var("p"), Formula::var("q"));
    CHECK(b.formula(r) ==
          parse_ok("(K1 (p & q) -> K1 p & K1 q) & (K1 p & K1 q -> K1 (p & q))"));
    auto t = b.ax_t(2, Formula::var("p"));
    CHECK(b.formula(t) == parse_ok("K2 p -> p"));
    auto four = b.ax_4(1, Formula::var("q"));
    CHECK(b.formula(four) == parse_ok("K1 q -> K1 K1 q"));
    auto taut = b.taut(parse_ok("p & q -> q & p"));
    auto rm = b.rm(3, taut);
    CHECK(b.formula(rm) == parse_ok("K3 (p & q) -> K3 (q & p)"));
    auto bridge = b.taut(Formula::imp(b.formula(t), Formula::disj(b.formula(t), Formula::var("p"))));
    auto end = b.mp(bridge, t);
    CHECK(b.formula(end) == Formula::disj(b.formula(t), Formula::var("p")));

    CHECK(topo_final(b.build()) == b.formula(end));
}

TEST_CASE("topo kernel rejections") {
    auto p = Formula::var("p");

    auto r1 = check_topo_proof(TopoProof{});
    REQUIRE(!r1.ok());
    CHECK(r1.error().format() == "empty proof");

    auto r2 = check_topo_proof(TopoProof{{TopoStep::axiom(TopoRuleKind::AxN, parse_ok("K1 p"))}});
    REQUIRE(!r2.ok());
    CHECK(r2.error().reason == "formula is not K_i true");

    auto r3 = check_topo_proof(
        TopoProof{{TopoStep::axiom(TopoRuleKind::AxR, parse_ok("K1 (p & q) -> K1 p & K1 q"))}});
    REQUIRE(!r3.ok());
    CHECK(r3.error().reason == "formula does not match the box/meet exchange");

    auto r4 = check_topo_proof(
        TopoProof{{TopoStep::axiom(TopoRuleKind::AxT, parse_ok("K1 p -> q"))}});
    REQUIRE(!r4.ok());
    CHECK(r4.error().reason == "formula does not match schema AxT");

    auto r5 = check_topo_proof(TopoProof{{TopoStep::taut(parse_ok("K1 p -> p"))}});
    REQUIRE(!r5.ok());
    CHECK(r5.error().reason == "not a propositional tautology");

    // RM: premise must be an implication and the image must match agent/shape.
    auto r6 = check_topo_proof(
        TopoProof{{TopoStep::taut(parse_ok("p -> p")),
                   TopoStep::rm(parse_ok("K1 p -> K2 p"), 1, 1)}});
    REQUIRE(!r6.ok());
    CHECK(r6.error().step == 2);
    CHECK(r6.error().reason == "formula is not the RM image of step 1");

    auto r7 = check_topo_proof(
        TopoProof{{TopoStep::taut(parse_ok("p | ~p")),
                   TopoStep::rm(parse_ok("K1 p -> K1 p"), 1, 1)}});
    REQUIRE(!r7.ok());
    CHECK(r7.error().reason == "step 1 is not an implication");

    auto r8 = check_topo_proof(
        TopoProof{{TopoStep::rm(parse_ok("K1 p -> K1 p"), 1, 1)}});
    REQUIRE(!r8.ok());
    CHECK(r8.error().reason == "RM reference must point at a strictly earlier step");

    auto r9 = check_topo_proof(
        TopoProof{{TopoStep::taut(parse_ok("p -> p | q")),
                   TopoStep::taut(parse_ok("q -> q")),
                   TopoStep::mp(parse_ok("p | q"), 1, 2)}});
    REQUIRE(!r9.ok());
    CHECK(r9.error().reason == "step 2 is not the antecedent of step 1");

    // Builder-side misuse throws rather than building bad certificates.
    TopoProofBuilder b;
    b.taut(Formula::imp(p, p));
    CHECK_THROWS_AS(b.mp(1, 1), std::logic_error);
    CHECK_THROWS_AS(b.axiom_instance(TopoRuleKind::AxN, parse_ok("K1 p")), std::logic_error);
    CHECK_THROWS_AS(b.axiom_instance(TopoRuleKind::Taut, parse_ok("p -> p")), std::logic_error);
}

TEST_CASE("the K axiom is derivable from the interior rules") {
    auto p = Formula::var("p");
    auto q = Formula::var("q");
    auto pr = prove_axiom_K_topo(2, p, q);
    CHECK(topo_final(pr) == parse_ok("K2 p & K2 (p -> q) -> K2 q"));

    auto nested = prove_axiom_K_topo(1, Formula::know(1, p), Formula::conj(p, q));
    CHECK(topo_final(nested) ==
          Formula::imp(Formula::conj(Formula::know(1, Formula::know(1, p)),
                                     Formula::know(1, Formula::imp(Formula::know(1, p),
                                                                   Formula::conj(p, q)))),
                       Formula::know(1, Formula::conj(p, q))));
}

TEST_CASE("necessitation is admissible in the interior system") {
    TopoProofBuilder b;
    b.taut(parse_ok("p -> p"));
    auto pr = prove_nec_topo(1, b.build());
    CHECK(topo_final(pr) == parse_ok("K1 (p -> p)"));

    auto again = prove_nec_topo(2, pr);
    CHECK(topo_final(again) == parse_ok("K2 K1 (p -> p)"));

    TopoProofBuilder bad;
    bad.taut(parse_ok("p -> p"));
    auto broken = bad.build();
    broken.steps[0].formula = parse_ok("p");  // no longer checks
    CHECK_THROWS_AS(prove_nec_topo(1, broken), std::invalid_argument);
}

TEST_CASE("S4 certificates translate to interior certificates") {
    // One proof that exercises Taut, Axiom, Nec and MP.
    ProofBuilder hb;
    auto ax = hb.axiom(SchemaName::AxK, 1, Formula::var("p"), Formula::var("q"));
    hb.nec(2, ax);
    auto t = hb.taut(Formula::imp(hb.formula(ax), Formula::imp(Formula::var("r"),
                                                               hb.formula(ax))));
    hb.mp(t, ax);
    hb.axiom(SchemaName::AxT, 1, Formula::var("p"));
    hb.axiom(SchemaName::Ax4, 2, Formula::var("q"));
    auto s4pr = hb.build();
    auto s4final = check_proof(System::s4(), s4pr);
    REQUIRE(s4final.ok());

    auto topo = s4_to_topo(s4pr);
    CHECK(topo_final(topo) == s4final.value());

    // The directed schema has no interior-rule counterpart.
    Proof ax2{{Step::axiom(SchemaName::Ax2, instantiate_schema(SchemaName::Ax2, 1, Formula::var("p")))}};
    CHECK_THROWS_AS(s4_to_topo(ax2), std::invalid_argument);

    // Inputs must check before translation.
    Proof junk{{Step::taut(parse_ok("K1 p -> p"))}};
    CHECK_THROWS_AS(s4_to_topo(junk), std::invalid_argument);
}

TEST_CASE("interior certificates translate to S4 certificates") {
    for (const auto& [name, pr] : bundled_topo_suite()) {
        CAPTURE(name);
        auto want = check_topo_proof(pr);
        REQUIRE(want.ok());
        auto s4 = topo_to_s4(pr);
        auto got = check_proof(System::s4(), s4);
        REQUIRE(got.ok());
        CHECK(got.value() == want.value());
    }

    TopoProof junk{{TopoStep::taut(parse_ok("K1 p -> p"))}};
    CHECK_THROWS_AS(topo_to_s4(junk), std::invalid_argument);
}

TEST_CASE("bundled interior theorems cover every rule") {
    auto suite = bundled_topo_suite();
    CHECK(suite.size() >= 20);
    bool used[7] = {};
    for (const auto& [name, pr] : suite) {
        CAPTURE(name);
        CHECK(check_topo_proof(pr).ok());
        for (const auto& st : pr.steps) used[static_cast<int>(st.rule)] = true;
    }
    for (bool u : used) CHECK(u);
}

TEST_CASE("random interior proofs check and are reproducible") {
    for (std::uint64_t seed : {3ULL, 14ULL, 159ULL}) {
        auto pr = random_topo_proof(seed, 20);
        CHECK(pr.steps.size() >= 20);
        CHECK(check_topo_proof(pr).ok());
        CHECK(topo_proof_to_text(random_topo_proof(seed, 20)) == topo_proof_to_text(pr));
    }
}

TEST_CASE("interior certificate text round-trips") {
    auto pr = prove_axiom_K_topo(1, Formula::var("p"), Formula::var("q"));
    auto text = topo_proof_to_text(pr);
    CHECK(text.substr(0, 14) == "system TOPOS4\n");
    auto back = topo_proof_from_text(text);
    REQUIRE(back.ok());
    CHECK(topo_proof_to_text(back.value()) == text);
    CHECK(topo_final(back.value()) == topo_final(pr));

    auto sample = topo_proof_from_text(
        "# interior-style\n"
        "system TOPOS4\n"
        "1: p -> p ; TAUT\n"
        "2: K1 p -> K1 p ; RM 1 1\n"
        "3: K2 true ; AXN\n");
    REQUIRE(sample.ok());
    CHECK(topo_final(sample.value()) == parse_ok("K2 true"));

    CHECK(!topo_proof_from_text("").ok());
    CHECK(!topo_proof_from_text("system S4\n1: p -> p ; TAUT\n").ok());
    CHECK(!topo_proof_from_text("system TOPOS4\n1: p -> p ; NEC 1 1\n").ok());
    CHECK(!topo_proof_from_text("system TOPOS4\n1: p -> p ; RM 1\n").ok());
    CHECK(!topo_proof_from_text("system TOPOS4\n1: p -> ; TAUT\n").ok());
}
