#include "numqe/counterexample.hpp"

#include <catch2/catch.hpp>

using namespace numqe;

TEST_CASE("every substructure reproduces its holds/fails pattern") {
    for (const Report& r : check_all_counterexamples(5, 127, 7)) {
        INFO(r.to_text());
        CHECK(r.matches_expectation());
        bool has_failing = false;
        for (const Finding& f : r.findings) has_failing = has_failing || !f.expected_holds;
        CHECK(has_failing);  // each report exhibits the failing instance
    }
}

TEST_CASE("the complex substructure loses the 127th root of 2") {
    Report r = check_counterexample({CounterexampleKind::c_over_m, 5, 127});
    CHECK(r.matches_expectation());
    bool found = false;
    for (const Finding& f : r.findings)
        if (f.check == "M8,127") {
            found = true;
            CHECK_FALSE(f.holds);
            CHECK(f.witness.find("1/127") != std::string::npos);
        }
    CHECK(found);
    // roots up to N = 5 hold
    int held_roots = 0;
    for (const Finding& f : r.findings)
        if (f.check.rfind("M8,", 0) == 0 && f.holds) ++held_roots;
    CHECK(held_roots == 4);  // degrees 2, 3, 4, 5
}

TEST_CASE("the rational additive substructure loses division by 127") {
    Report r = check_counterexample({CounterexampleKind::q_over_m, 5, 127});
    CHECK(r.matches_expectation());
    bool found = false;
    for (const Finding& f : r.findings)
        if (f.check == "A7,127") {
            found = true;
            CHECK_FALSE(f.holds);
            CHECK(f.witness.find("1/127") != std::string::npos);
        }
    CHECK(found);
}

TEST_CASE("the integer substructure carries the Bezout witness for n = 3") {
    Report r = check_counterexample({CounterexampleKind::z_over_p, 5, 7});
    CHECK(r.matches_expectation());
    bool n3 = false, fails = false;
    for (const Finding& f : r.findings) {
        if (f.check == "A7,3o(sampled,bezout)") {
            n3 = true;
            CHECK(f.holds);
        }
        if (f.check == "A7,7o") {
            fails = true;
            CHECK_FALSE(f.holds);
        }
    }
    CHECK(n3);
    CHECK(fails);
}

TEST_CASE("the root-of-unity substructure breaks torsion-freeness at 127") {
    Report r = check_counterexample({CounterexampleKind::qpos_omega_p, 5, 127});
    CHECK(r.matches_expectation());
    bool found = false;
    for (const Finding& f : r.findings)
        if (f.check == "M7,127o") {
            found = true;
            CHECK_FALSE(f.holds);
            CHECK(f.witness.find("w[127]") != std::string::npos);
        }
    CHECK(found);
}

TEST_CASE("reports are deterministic for a fixed spec and seed") {
    auto a = check_counterexample({CounterexampleKind::r_over_m, 5, 127}, 99);
    auto b = check_counterexample({CounterexampleKind::r_over_m, 5, 127}, 99);
    CHECK(a.to_text() == b.to_text());
    CHECK(a.to_text().find("seed=99") != std::string::npos);
}
