#include <doctest.h>

#include <json.hpp>

#include "sibuya/verify.hpp"

using namespace sibuya;

TEST_CASE("coefficient sign conditions") {
    // m = 4, a = (1, -0.5, -2): largest admissible shift is j = 2.
    auto r = check_hypothesis({1.0, -0.5, -2.0}, 4);
    CHECK(r.accepted);
    CHECK(r.j == 2);

    // m = 3, a = (-1, 1): k = 2 violates both shifts.
    r = check_hypothesis({-1.0, 1.0}, 3);
    CHECK_FALSE(r.accepted);
    CHECK(r.violating_k == 2);

    // all-zero coefficients are always admissible
    r = check_hypothesis({0.0, 0.0, 0.0, 0.0}, 5);
    CHECK(r.accepted);

    // m = 4, j = 2 with a_2 > 0 is excluded by the supplement
    r = check_hypothesis({1.0, 0.5, -2.0}, 4);
    CHECK_FALSE(r.accepted);

    CHECK_THROWS_AS(check_hypothesis({0.0}, 4), input_error);
}

TEST_CASE("report bookkeeping and JSON shape") {
    VerificationReport rep;
    rep.seed = 42;
    rep.add("alpha_check", "p1", 1e-9, 1e-6);
    rep.add("beta_check", "p2", 2.0, 1.0);
    CHECK_FALSE(rep.all_pass());
    const auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["seed"] == 42);
    CHECK(j["all_pass"] == false);
    REQUIRE(j["entries"].size() == 2);
    CHECK(j["entries"][0]["verdict"] == "pass");
    CHECK(j["entries"][1]["verdict"] == "fail");
}

TEST_CASE("suite selection runs only the named checks") {
    RayConfig cfg;
    const auto rep = run_suite(7, {"hypothesis"}, cfg);
    CHECK(rep.all_pass());
    CHECK(rep.entries.size() == 2);
    for (const auto& e : rep.entries)
        CHECK(e.name.rfind("hypothesis", 0) == 0);
}

TEST_CASE("zeroed thresholds turn residuals into failures") {
    RayConfig cfg;
    Thresholds th;
    th.wronskian = 0.0;
    VerificationReport rep;
    std::mt19937_64 rng(5);
    check_wronskian_lemma(rep, 3, {0}, 1, rng, cfg, th);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("same seed reproduces the same report") {
    RayConfig cfg;
    const auto a = run_suite(123, {"hypothesis"}, cfg);
    const auto b = run_suite(123, {"hypothesis"}, cfg);
    CHECK(a.to_json() == b.to_json());
}
