#include <doctest.h>

#include <string>
#include <vector>

#include "epi/formula.hpp"
#include "epi/hilbert.hpp"

using namespace epi;

namespace {

Formula parse_ok(const std::string& text) {
    auto r = parse(text);
    REQUIRE(r.ok());
    return r.take();
}

}  // namespace

TEST_CASE("system presets and names") {
    CHECK(System::k().schemas == std::set<SchemaName>{SchemaName::AxK});
    CHECK(System::s42().schemas.size() == 4);
    CHECK(system_name(System::s4()) == "S4");
    CHECK(system_name(System::k2()) == "K2");
    REQUIRE(system_from_name("S42").has_value());
    CHECK(system_from_name("S42")->schemas == System::s42().schemas);
    CHECK(!system_from_name("S5").has_value());
    CHECK(system_name(System{{SchemaName::AxK, SchemaName::Ax4}}) == "custom");
}

TEST_CASE("is_tautology on modal skeletons") {
    CHECK(is_tautology(parse_ok("p -> p")));
    CHECK(is_tautology(parse_ok("K1 p -> K1 p")));
    CHECK(!is_tautology(parse_ok("K1 p -> p")));  // skeleton a -> p, independent
    CHECK(is_tautology(parse_ok("p | ~p")));
    CHECK(!is_tautology(parse_ok("p | q")));
    CHECK(is_tautology(parse_ok("~(p & ~p)")));
    CHECK(is_tautology(parse_ok("false -> p")));
    CHECK(is_tautology(parse_ok("true")));

    // Equal Know-subtrees share one skeleton atom; different agents do not.
    CHECK(is_tautology(parse_ok("K1 (p & q) -> K1 (p & q)")));
    CHECK(!is_tautology(parse_ok("K1 p -> K2 p")));
    CHECK(is_tautology(parse_ok("K1 p & q -> q & K1 p")));

    // Wide conjunction pushes past 6 distinct atoms (block-counting path).
    CHECK(is_tautology(parse_ok(
        "a1 & a2 & a3 & a4 & a5 & a6 & a7 & a8 -> a8")));
    CHECK(!is_tautology(parse_ok(
        "a1 & a2 & a3 & a4 & a5 & a6 & a7 | a8 -> a8")));

    // 21 distinct atoms trips the cap.
    std::string wide = "b1";
    for (int i = 2; i <= 21; ++i) wide += " & b" + std::to_string(i);
    CHECK_THROWS_AS(is_tautology(parse_ok(wide + " -> " + wide)), TooManyAtoms);
    std::string wide20 = "b1";
    for (int i = 2; i <= 20; ++i) wide20 += " & b" + std::to_string(i);
    CHECK(is_tautology(parse_ok(wide20 + " -> b7")));
}

TEST_CASE("check_proof accepts the documented examples") {
    auto p = Formula::var("p");

    Proof pr1{{Step::taut(parse_ok("p -> p"))}};
    auto r1 = check_proof(System::k(), pr1);
    REQUIRE(r1.ok());
    CHECK(r1.value() == parse_ok("p -> p"));

    Proof pr2{{Step::taut(parse_ok("p -> p")),
               Step::nec(parse_ok("K1 (p -> p)"), 1, 1)}};
    auto r2 = check_proof(System::k(), pr2);
    REQUIRE(r2.ok());
    CHECK(r2.value() == Formula::know(1, Formula::imp(p, p)));

    Proof pr3{{Step::axiom(SchemaName::AxT, parse_ok("K1 p -> p"))}};
    auto r3 = check_proof(System::s4(), pr3);
    REQUIRE(r3.ok());

    // Full MP round: AxK conjunctive form, split with a tautology.
    ProofBuilder b;
    auto ax = b.axiom(SchemaName::AxK, 1, p, Formula::var("q"));
    auto conj = b.formula(ax).lhs();
    auto bridge = b.taut(Formula::imp(b.formula(ax),
                                      Formula::imp(conj, b.formula(ax).rhs())));
    auto half = b.mp(bridge, ax);
    CHECK(b.formula(half) == Formula::imp(conj, b.formula(ax).rhs()));
    auto rb = check_proof(System::k(), b.build());
    REQUIRE(rb.ok());
}

TEST_CASE("check_proof rejects with step-indexed reasons") {
    auto axt = parse_ok("K1 p -> p");

    // Schema not in the system.
    Proof pr1{{Step::axiom(SchemaName::AxT, axt)}};
    auto r1 = check_proof(System::k(), pr1);
    REQUIRE(!r1.ok());
    CHECK(r1.error().step == 1);
    CHECK(r1.error().reason == "schema AxT not in system K");
    CHECK(r1.error().format() == "line 1: schema AxT not in system K");

    Proof pr2{{Step::axiom(SchemaName::Ax2, parse_ok("~K1 ~K1 p -> K1 ~K1 ~p"))}};
    auto r2 = check_proof(System::s4(), pr2);
    REQUIRE(!r2.ok());
    CHECK(r2.error().reason == "schema Ax2 not in system S4");

    // Formula does not match the claimed schema.
    Proof pr3{{Step::axiom(SchemaName::AxT, parse_ok("K1 p -> q"))}};
    auto r3 = check_proof(System::s4(), pr3);
    REQUIRE(!r3.ok());
    CHECK(r3.error().reason.find("does not match schema") != std::string::npos);

    // Taut that is not one.
    Proof pr4{{Step::taut(axt)}};
    auto r4 = check_proof(System::s4(), pr4);
    REQUIRE(!r4.ok());
    CHECK(r4.error().reason == "not a propositional tautology");

    // MP plumbing.
    Proof pr5{{Step::taut(parse_ok("p -> p")), Step::mp(parse_ok("p"), 1, 1)}};
    auto r5 = check_proof(System::k(), pr5);
    REQUIRE(!r5.ok());
    CHECK(r5.error().step == 2);
    CHECK(r5.error().reason == "step 1 is not the antecedent of step 1");

    Proof pr6{{Step::taut(parse_ok("p -> p")), Step::mp(parse_ok("p"), 2, 1)}};
    auto r6 = check_proof(System::k(), pr6);
    REQUIRE(!r6.ok());
    CHECK(r6.error().reason == "MP references must point at strictly earlier steps");

    Proof pr7{{Step::taut(parse_ok("p | ~p")), Step::taut(parse_ok("q -> q")),
               Step::mp(parse_ok("q"), 1, 2)}};
    auto r7 = check_proof(System::k(), pr7);
    REQUIRE(!r7.ok());
    CHECK(r7.error().reason == "step 1 is not an implication");

    // NEC plumbing.
    Proof pr8{{Step::taut(parse_ok("p -> p")), Step::nec(parse_ok("K2 (p -> q)"), 2, 1)}};
    auto r8 = check_proof(System::k(), pr8);
    REQUIRE(!r8.ok());
    CHECK(r8.error().reason == "formula is not K2 of step 1");

    Proof pr9{{Step::nec(parse_ok("K1 p"), 1, 1)}};
    auto r9 = check_proof(System::k(), pr9);
    REQUIRE(!r9.ok());
    CHECK(r9.error().reason == "NEC reference must point at a strictly earlier step");

    auto r10 = check_proof(System::k(), Proof{});
    REQUIRE(!r10.ok());
    CHECK(r10.error().step == 0);
    CHECK(r10.error().format() == "empty proof");
}

TEST_CASE("check_deduction matches premise selections") {
    auto p = Formula::var("p");
    auto q = Formula::var("q");

    // premises [p], goal p, certificate ends in p -> p.
    Proof pr1{{Step::taut(Formula::imp(p, p))}};
    CHECK(check_deduction(System::k(), {p}, p, pr1).ok());

    // No premises: the certificate proves the goal outright.
    Proof pr2{{Step::taut(parse_ok("p -> p"))}};
    CHECK(check_deduction(System::k(), {}, parse_ok("p -> p"), pr2).ok());

    // premises [p, q], goal p & q via the pairing tautology.
    Proof pr3{{Step::taut(Formula::imp(p, Formula::imp(q, Formula::conj(p, q))))}};
    CHECK(check_deduction(System::k(), {p, q}, Formula::conj(p, q), pr3).ok());

    // Premise order in the certificate is free (set-level reading).
    Proof pr4{{Step::taut(Formula::imp(q, Formula::imp(p, Formula::conj(p, q))))}};
    CHECK(check_deduction(System::k(), {p, q}, Formula::conj(p, q), pr4).ok());
    CHECK(check_deduction(System::k(), {q, p}, Formula::conj(p, q), pr4).ok());

    // Repetition of a premise is allowed.
    Proof pr5{{Step::taut(Formula::imp(p, Formula::imp(p, p)))}};
    CHECK(check_deduction(System::k(), {p}, p, pr5).ok());

    auto bad = check_deduction(System::k(), {q}, p, pr1);
    REQUIRE(!bad.ok());
    CHECK(bad.error().reason == "final formula does not reduce to the goal over the premises");
}

TEST_CASE("ProofBuilder: indices, splice, guardrails") {
    auto p = Formula::var("p");

    ProofBuilder inner;
    inner.taut(Formula::imp(p, p));
    inner.nec(1, 1);
    auto inner_pr = inner.build();
    REQUIRE(check_proof(System::k(), inner_pr).ok());

    ProofBuilder outer;
    outer.taut(Formula::imp(Formula::bottom(), p));  // occupy index 1
    auto spliced = outer.splice(inner_pr);
    CHECK(spliced == 3);
    CHECK(outer.formula(spliced) == Formula::know(1, Formula::imp(p, p)));
    auto tail = outer.taut(Formula::imp(outer.formula(spliced),
                                        Formula::disj(outer.formula(spliced), p)));
    outer.mp(tail, spliced);
    REQUIRE(check_proof(System::k(), outer.build()).ok());

    // Builder shape mismatches are logic errors, caught before the kernel.
    ProofBuilder bad;
    bad.taut(Formula::imp(p, p));
    CHECK_THROWS_AS(bad.mp(1, 1), std::logic_error);
    CHECK_THROWS_AS(bad.formula(9), std::logic_error);
    CHECK_THROWS_AS(bad.axiom_instance(SchemaName::AxT, Formula::imp(p, p)), std::logic_error);
}

TEST_CASE("certificate text round-trips") {
    ProofBuilder b;
    auto ax = b.axiom(SchemaName::AxT, 1, Formula::var("p"));
    auto t = b.taut(Formula::imp(b.formula(ax), Formula::disj(b.formula(ax), Formula::var("q"))));
    b.mp(t, ax);
    b.nec(2, b.size());
    auto pr = b.build();
    REQUIRE(check_proof(System::s4(), pr).ok());

    auto text = proof_to_text(System::s4(), pr);
    CHECK(text.substr(0, 10) == "system S4\n");
    auto back = proof_from_text(text);
    REQUIRE(back.ok());
    CHECK(proof_to_text(back.value().first, back.value().second) == text);
    REQUIRE(check_proof(back.value().first, back.value().second).ok());

    auto sample = proof_from_text(
        "# a comment\n"
        "system S42\n"
        "1: K1 p -> p ; AXT\n"
        "2: (K1 p -> p) -> K1 p -> K1 p -> p ; TAUT\n"
        "3: K1 p -> K1 p -> p ; MP 2 1\n"
        "4: K2 (K1 p -> K1 p -> p) ; NEC 2 3\n");
    REQUIRE(sample.ok());
    CHECK(system_name(sample.value().first) == "S42");
    auto checked = check_proof(sample.value().first, sample.value().second);
    REQUIRE(checked.ok());
    CHECK(render(checked.value()) == "K2 (K1 p -> K1 p -> p)");
}

TEST_CASE("certificate parse errors") {
    CHECK(!proof_from_text("").ok());
    CHECK(!proof_from_text("1: p -> p ; TAUT\n").ok());            // missing header
    CHECK(!proof_from_text("system S9\n1: p -> p ; TAUT\n").ok()); // unknown system
    CHECK(!proof_from_text("system K\n2: p -> p ; TAUT\n").ok());  // numbering from 1
    CHECK(!proof_from_text("system K\n1: p -> p\n").ok());         // missing rule
    CHECK(!proof_from_text("system K\n1: p -> p ; WAT\n").ok());   // unknown rule
    CHECK(!proof_from_text("system K\n1: p -> ; TAUT\n").ok());    // formula error
    CHECK(!proof_from_text("system K\n1: p -> p ; MP 1\n").ok());  // missing operand
    CHECK(!proof_from_text("system K\n1: p -> p ; NEC x 1\n").ok());

    // Formula errors carry an offset into the certificate text.
    auto r = proof_from_text("system K\n1: p -> ; TAUT\n");
    REQUIRE(!r.ok());
    CHECK(r.error().offset > 10);
}
