// Command line front end: simulate, scenario, verify.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "enskog/simulation.hpp"
#include "enskog/verify.hpp"

using namespace enskog;

namespace {

int run(SimulationConfig config, const RunOptions& opt) {
    const auto out = run_simulation(config, opt);
    for (const auto& v : out.verdicts)
        std::cout << (v.pass ? "PASS " : (v.counted ? "FAIL " : "info ")) << v.name << "  measured " << v.measured
                  << "  tolerance " << v.tolerance << (v.note.empty() ? "" : "  (" + v.note + ")") << "\n";
    if (out.exit_code == 3) std::cerr << "numerical abort: " << out.manifest.value("abort_reason", "") << "\n";
    std::cout << "outputs in " << config.output.directory << "\n";
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enskog and Enskog-Vlasov slab solver"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ENSKOG_VERSION));

    std::string output_dir;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    bool quiet = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output-dir", output_dir, "directory for series, snapshots and manifest");
        cmd->add_option("--override", overrides, "section.key=value, repeatable");
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t s) { seed = s; seed_set = true; }, "seed of the collision sampler");
        cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_flag("--quiet", quiet, "no progress lines");
    };

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "run a configuration file");
    sim->add_option("config", config_path, "TOML configuration")->required()->check(CLI::ExistingFile);
    add_common(sim);

    std::string scenario;
    auto* sc = app.add_subcommand("scenario", "run a built-in scenario");
    sc->add_option("name", scenario, "scenario name")->required()->check(CLI::IsMember(scenario_names()));
    add_common(sc);

    auto* list = app.add_subcommand("list", "list scenarios and verify suites");

    std::string suite;
    int resolution = 1;
    std::string report_path;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(verify_suites()));
    ver->add_option("--resolution", resolution, "refinement level")->check(CLI::PositiveNumber);
    ver->add_option("--report", report_path, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            std::cout << "scenarios:\n";
            for (const auto& n : scenario_names()) std::cout << "  " << n << "  " << make_scenario(n).description << "\n";
            std::cout << "verify suites:\n";
            for (const auto& n : verify_suites()) std::cout << "  " << n << "\n";
            return 0;
        }
        if (ver->parsed()) {
            const auto rep = run_verify(suite, resolution);
            for (const auto& c : rep.checks)
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.value << " <= " << c.tolerance << "\n";
            if (!report_path.empty()) std::ofstream(report_path) << rep.to_json().dump(2) << "\n";
            return rep.pass() ? 0 : 1;
        }

        if (quiet) spdlog::set_level(spdlog::level::warn);
        RunOptions opt;
        opt.threads = threads;
        opt.progress = !quiet;
        SimulationConfig config;
        if (sim->parsed()) {
            config = parse_config(config_path);
        } else {
            const auto s = make_scenario(scenario);
            config = s.config;
            opt.scenario = s.name;
            opt.expect = s.expect;
        }
        if (!output_dir.empty()) overrides.push_back("output.directory=" + output_dir);
        if (seed_set) overrides.push_back("integrator.seed=" + std::to_string(seed));
        if (!overrides.empty()) config = apply_overrides(config, overrides);
        return run(config, opt);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error:\n";
        for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
        return 2;
    }
}
