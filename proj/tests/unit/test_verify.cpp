#include <doctest.h>

#include "enskog/verify.hpp"

using namespace enskog;

TEST_CASE("random smooth states are positive and seed-determined") {
    auto ps = std::make_shared<PhaseSpace>(SpatialGrid(1.0, 5), VelocityGrid(6.0, 8));
    const auto a = random_smooth_state(ps, 1, 1.0, 1.0);
    const auto b = random_smooth_state(ps, 1, 1.0, 1.0);
    const auto c = random_smooth_state(ps, 2, 1.0, 1.0);
    for (double v : a.data()) CHECK(v > 0.0);
    CHECK(a.data() == b.data());
    CHECK(a.data() != c.data());
}

TEST_CASE("report bookkeeping") {
    Report r;
    r.suite = "demo";
    r.expect_le("small", 1e-3, 1e-2);
    CHECK(r.pass());
    r.expect_le("nan", std::nan(""), 1.0);
    CHECK_FALSE(r.pass());
    const auto j = r.to_json();
    CHECK(j["checks"].size() == 2);
    CHECK(j["checks"][1]["pass"] == false);
    CHECK_THROWS(run_verify("nothing"));
    CHECK_THROWS(run_verify("boundary", 0));
}

TEST_CASE("boundary and flux suites pass") {
    for (const char* s : {"boundary", "fluxes"}) {
        const auto r = run_verify(s, 1);
        for (const auto& c : r.checks) CHECK_MESSAGE(c.pass, c.name << " " << c.value << " > " << c.tolerance);
    }
}
