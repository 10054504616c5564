#include <doctest.h>

#include <algorithm>
#include <string>

#include "enskog/config.hpp"

using namespace enskog;

namespace {

bool mentions(const ConfigError& e, const std::string& what) {
    return std::any_of(e.violations().begin(), e.violations().end(),
                       [&](const std::string& v) { return v.find(what) != std::string::npos; });
}

}  // namespace

TEST_CASE("defaults are valid and survive a round trip") {
    SimulationConfig c;
    CHECK(validate(c).empty());
    const auto back = parse_config_text(serialize(c));
    CHECK(back == c);
    CHECK(config_hash(back) == config_hash(c));
}

TEST_CASE("non-default values round trip") {
    const std::string text = R"(
[geometry]
cells = 12
[velocity]
points = 12
xi_max = 7.0
[sphere]
order = 10
[physics]
sigma = 0.03
density = 1500.0
[initial]
temperature = 1.2
profile = "cosine"
amplitude = 0.2
[correlation]
model = "contact-cs"
h_collisional = "cs-surrogate"
[walls.left]
kind = "maxwell"
accommodation = 0.5
[walls.right]
kind = "cercignani-lampis"
alpha_n = 0.8
alpha_t = 0.9
[vlasov]
enabled = true
epsilon = 0.01
core_radius = 0.1
[integrator]
dt = 0.002
collision_mode = "full-quadrature"
[output]
directory = "out"
formats = ["csv"]
)";
    const auto c = parse_config_text(text);
    CHECK(c.geometry.cells == 12);
    CHECK(c.integrator.sphere_order == 10);
    CHECK(c.left.kind == WallKernelKind::Maxwell);
    CHECK(c.right.alpha_t == 0.9);
    CHECK(c.vlasov.enabled);
    CHECK(c.integrator.collision_mode == CollisionMode::FullQuadrature);
    CHECK(parse_config_text(serialize(c)) == c);
    CHECK(config_hash(c) != config_hash(SimulationConfig{}));
}

TEST_CASE("every violation is reported") {
    const std::string text = R"(
[velocity]
points = 15
[sphere]
order = 7
[physics]
sigma = -1.0
colour = "red"
[correlation]
model = "unity"
h_collisional = "cs-surrogate"
)";
    try {
        parse_config_text(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "symmetry"));
        CHECK(mentions(e, "sphere.order"));
        CHECK(mentions(e, "physics.sigma"));
        CHECK(mentions(e, "colour"));
        CHECK(mentions(e, "pairing rule:"));
        CHECK(e.violations().size() >= 5);
    }
}

TEST_CASE("physical consistency checks") {
    SimulationConfig c;
    c.initial.temperature = 3.0;
    CHECK_FALSE(validate(c).empty());  // tails need xi_max >= 5 sqrt(3)
    c = {};
    c.integrator.dt = 0.1;
    CHECK_FALSE(validate(c).empty());  // CFL
    c = {};
    c.correlation.model = CorrelationKind::ContactCS;
    c.correlation.h_collisional = HcMode::CSSurrogate;
    c.physics.density = 2e5;
    CHECK_FALSE(validate(c).empty());  // packing fraction
    c = {};
    c.correlation.model = CorrelationKind::ConfigOracle;
    c.correlation.h_collisional = HcMode::ConfigOracle;
    c.physics.density = 2.5;
    c.correlation.particles = 3;
    CHECK_FALSE(validate(c).empty());  // density does not hold 3 particles
    c.physics.density = 3.0;
    CHECK(validate(c).empty());
}

TEST_CASE("overrides") {
    const auto c = apply_overrides(SimulationConfig{}, {"geometry.cells=20", "walls.left.kind=maxwell",
                                                        "walls.left.accommodation=0.4", "output.directory=here"});
    CHECK(c.geometry.cells == 20);
    CHECK(c.left.kind == WallKernelKind::Maxwell);
    CHECK(c.left.accommodation == 0.4);
    CHECK(c.output.directory == "here");
    CHECK_THROWS_AS(apply_overrides(SimulationConfig{}, {"geometry.cells"}), ConfigError);
    CHECK_THROWS_AS(apply_overrides(SimulationConfig{}, {"geometry.width=3"}), ConfigError);
    CHECK_THROWS_AS(apply_overrides(SimulationConfig{}, {"velocity.points=9"}), ConfigError);
}

TEST_CASE("objects built from a configuration") {
    SimulationConfig c;
    c.geometry.cells = 8;
    c.initial.profile = "cosine";
    c.initial.amplitude = 0.3;
    const auto setup = make_solver_setup(c);
    CHECK(setup.phase_space->space.cells() == 8);
    CHECK(setup.collision.reference_temperature == c.physics.wall_temperature);
    const auto f = make_initial_state(c, setup.phase_space);
    CHECK(f.total_mass() == doctest::Approx(c.physics.density * c.geometry.length).epsilon(1e-12));
    const auto rho = f.density();
    CHECK(rho.front() > rho.back());
    const auto rs = make_run_settings(c);
    CHECK(rs.dt == c.integrator.dt);
    CHECK(rs.hc.mode == HcMode::IdealClosedForm);
}
