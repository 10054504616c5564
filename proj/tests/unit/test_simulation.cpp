#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "enskog/simulation.hpp"

using namespace enskog;
namespace fs = std::filesystem;

namespace {

SimulationConfig tiny(const std::string& dir) {
    SimulationConfig c;
    c.geometry.cells = 6;
    c.velocity.points = 8;
    c.velocity.xi_max = 5.6;
    c.physics.density = 50.0;
    c.physics.sigma = 0.05;
    c.initial.temperature = 1.2;
    c.integrator.dt = 0.01;
    c.integrator.t_end = 0.2;
    c.integrator.samples = 4;
    c.output.every = 5;
    c.output.snapshot_every = 10;
    c.output.directory = (fs::temp_directory_path() / dir).string();
    return c;
}

std::string first_line(const fs::path& p) {
    std::ifstream is(p);
    std::string s;
    std::getline(is, s);
    return s;
}

}  // namespace

TEST_CASE("a short run writes its outputs and passes") {
    const auto c = tiny("enskog_unit_run");
    fs::remove_all(c.output.directory);
    RunOptions opt;
    opt.progress = false;
    const auto out = run_simulation(c, opt);
    CHECK(out.exit_code == 0);
    REQUIRE(out.result.has_value());
    CHECK(out.result->final_state.step == 20);
    const fs::path dir(c.output.directory);
    for (const char* f : {"series.csv", "manifest.json", "config.toml", "final_state.csv", "free_energy.gp",
                          "snapshot_0000.csv"})
        CHECK_MESSAGE(fs::exists(dir / f), f);
    CHECK(first_line(dir / "series.csv").rfind("t,mass,mom_x,E,Hk,Hc,F,Fprime,dF_dt", 0) == 0);
    CHECK(parse_config(dir / "config.toml") == c);
    const auto m = nlohmann::json::parse(std::ifstream(dir / "manifest.json"));
    CHECK(m["config_hash"] == config_hash(c));
    CHECK(m["pass"] == true);
    CHECK(m["verdicts"].size() == out.verdicts.size());
    fs::remove_all(dir);
}

TEST_CASE("identical runs are bit-identical") {
    auto c = tiny("enskog_unit_repeat");
    RunOptions opt;
    opt.progress = false;
    opt.write_outputs = false;
    const auto a = run_simulation(c, opt);
    opt.threads = 3;
    const auto b = run_simulation(c, opt);
    REQUIRE(a.result.has_value());
    REQUIRE(b.result.has_value());
    CHECK(a.result->final_state.f.data() == b.result->final_state.f.data());
}

TEST_CASE("a numerical abort returns exit code 3 and dumps the state") {
    auto c = tiny("enskog_unit_abort");
    fs::remove_all(c.output.directory);
    c.physics.density = 1e6;
    RunOptions opt;
    opt.progress = false;
    const auto out = run_simulation(c, opt);
    CHECK(out.exit_code == 3);
    CHECK_FALSE(out.result.has_value());
    CHECK(fs::exists(fs::path(c.output.directory) / "abort_state.csv"));
    CHECK(out.manifest["aborted"] == true);
    fs::remove_all(c.output.directory);
}

TEST_CASE("scenarios are valid configurations") {
    CHECK(scenario_names().size() == 4);
    for (const auto& name : scenario_names()) {
        const auto s = make_scenario(name);
        CHECK(s.name == name);
        CHECK(validate(s.config).empty());
    }
    CHECK(make_scenario("relax-vlasov").config.vlasov.enabled);
    CHECK(make_scenario("equilibrium-hold").expect.equilibrium);
    CHECK_THROWS(make_scenario("nope"));
}
