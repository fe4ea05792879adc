#include <doctest.h>

#include <set>
#include <string>

#include "epi/formula.hpp"
#include "epi/kripke.hpp"
#include "epi/topospace.hpp"

using namespace epi;

namespace {

Formula parse_ok(const std::string& text) {
    auto r = parse(text);
    REQUIRE(r.ok());
    return r.take();
}

// Sierpinski space on {0,1}: opens {}, {1}, {0,1}; V(p) = {1}.
TopoModel sierpinski() {
    TopoModel t;
    t.num_points = 2;
    t.opens = {0, 0b10, 0b11};
    t.valuation["p"] = 0b10;
    return t;
}

}  // namespace

TEST_CASE("is_topology and violation reporting") {
    CHECK(is_topology(2, {0, 0b11}));             // indiscrete
    CHECK(is_topology(2, {0, 0b01, 0b10, 0b11})); // discrete
    CHECK(is_topology(2, {0, 0b10, 0b11}));       // Sierpinski

    CHECK(!is_topology(2, {0, 0b01, 0b10}));  // missing the union {0,1}
    CHECK(!is_topology(2, {0b11}));           // missing the empty set
    CHECK(!is_topology(2, {0}));              // missing the full set

    CHECK(!topology_violation(2, {0, 0b10, 0b11}).has_value());
    auto v1 = topology_violation(2, {0b11});
    REQUIRE(v1.has_value());
    CHECK(v1->find("empty") != std::string::npos);
    auto v2 = topology_violation(2, {0});
    REQUIRE(v2.has_value());
    CHECK(v2->find("full") != std::string::npos);
    auto v3 = topology_violation(2, {0, 0b01, 0b10});
    REQUIRE(v3.has_value());
    CHECK(v3->find("union") != std::string::npos);
    auto v4 = topology_violation(3, {0, 0b011, 0b110, 0b111});
    REQUIRE(v4.has_value());
    CHECK(v4->find("intersection") != std::string::npos);
}

TEST_CASE("interior and min_open on Sierpinski") {
    auto t = sierpinski();
    CHECK(interior(t, 0b11) == 0b11);
    CHECK(interior(t, 0b10) == 0b10);
    CHECK(interior(t, 0b01) == 0);  // {0} holds no nonempty open
    CHECK(interior(t, 0) == 0);
    CHECK(min_open(t, 0) == 0b11);
    CHECK(min_open(t, 1) == 0b10);
}

TEST_CASE("topo_eval: interior semantics") {
    auto t = sierpinski();
    auto box_p = parse_ok("K0 p");
    CHECK(topo_eval(t, 1, box_p));
    CHECK(!topo_eval(t, 0, box_p));
    CHECK(!topo_eval(t, 0, parse_ok("false")));
    CHECK(!topo_eval(t, 1, parse_ok("false")));
    CHECK(topo_eval(t, 0, parse_ok("true")));
    CHECK(topo_eval(t, 1, parse_ok("p")));
    CHECK(!topo_eval(t, 0, parse_ok("p")));
    CHECK(topo_eval(t, 0, parse_ok("p -> K0 p")));  // vacuous at 0
    CHECK(topo_eval(t, 0, parse_ok("~K0 p & ~K0 ~p")));

    // V(p) = everything makes box p global.
    TopoModel full = t;
    full.valuation["p"] = 0b11;
    CHECK(topo_eval(full, 0, box_p));
    CHECK(topo_eval(full, 1, box_p));

    CHECK(topo_truth_set(t, box_p) == 0b10);
    CHECK(topo_truth_set(t, parse_ok("~K0 p")) == 0b01);

    // Single-box language: any other agent is rejected.
    CHECK_THROWS_AS(topo_eval(t, 0, parse_ok("K1 p")), std::invalid_argument);
    CHECK_THROWS_AS(topo_truth_set(t, parse_ok("L2 p")), std::invalid_argument);
    CHECK_THROWS_AS(topo_eval(t, 5, parse_ok("p")), std::out_of_range);
}

TEST_CASE("specialization frame") {
    auto t = sierpinski();
    auto m = specialization_frame(t);
    CHECK(m.frame.num_worlds == 2);
    CHECK(encode_relation(m.frame.rel.at(0), 2) == 11);  // (0,0) (0,1) (1,1)
    CHECK(class_check_all(m.frame, FrameClass::Preorder));
    CHECK(m.valuation.at("p") == 0b10);

    // Box along the specialization order equals the interior box.
    auto box_p = parse_ok("K0 p");
    for (std::uint32_t w = 0; w < 2; ++w)
        CHECK(eval(m, w, box_p) == topo_eval(t, w, box_p));

    // Discrete: identity relation. Indiscrete: total relation.
    TopoModel disc;
    disc.num_points = 2;
    disc.opens = {0, 0b01, 0b10, 0b11};
    auto md = specialization_frame(disc);
    CHECK(md.frame.pairs(0) ==
          std::vector<std::pair<WorldId, WorldId>>{{0, 0}, {1, 1}});

    TopoModel indisc;
    indisc.num_points = 2;
    indisc.opens = {0, 0b11};
    auto mi = specialization_frame(indisc);
    CHECK(mi.frame.pairs(0) ==
          std::vector<std::pair<WorldId, WorldId>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("topology catalog matches the preorder counts") {
    CHECK(topology_catalog(1).size() == 1);
    CHECK(topology_catalog(2).size() == 4);
    CHECK(topology_catalog(3).size() == 29);
    CHECK(topology_catalog(4).size() == 355);

    for (const auto& opens : topology_catalog(3)) {
        std::set<PointSet> fam(opens.begin(), opens.end());
        CHECK(is_topology(3, fam));
    }
}

TEST_CASE("topo files round-trip") {
    auto t = sierpinski();
    auto text = topo_to_text(t);
    auto back = topo_from_text(text);
    REQUIRE(back.ok());
    CHECK(topo_to_text(back.value()) == text);
    CHECK(back.value().opens == t.opens);
    CHECK(back.value().valuation.at("p") == t.valuation.at("p"));

    auto parsed = topo_from_text("# sierpinski\npoints 2\nopen:\nopen: 1\nopen: 0 1\nval p: 1\n");
    REQUIRE(parsed.ok());
    CHECK(parsed.value().opens == t.opens);

    CHECK(!topo_from_text("").ok());
    CHECK(!topo_from_text("open: 0\npoints 1\n").ok());        // points must come first
    CHECK(!topo_from_text("points 1\nopen: 3\n").ok());        // point out of range
    CHECK(!topo_from_text("points 1\nval p: 0\nval p:\n").ok());  // repeated label

    // The reader accepts non-topologies; the checker names the violation.
    auto loose = topo_from_text("points 2\nopen: 0\n");
    REQUIRE(loose.ok());
    CHECK(topology_violation(2, loose.value().opens).has_value());
}
