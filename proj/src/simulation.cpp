#include "enskog/simulation.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <spdlog/spdlog.h>

#include "enskog/parallel.hpp"

#ifndef ENSKOG_VERSION
#define ENSKOG_VERSION "0.0.0"
#endif

namespace enskog {

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"relax-boltzmann", "relax-dense", "relax-vlasov", "equilibrium-hold"};
    return names;
}

Scenario make_scenario(const std::string& name) {
    Scenario s;
    s.name = name;
    SimulationConfig& c = s.config;
    c.output.directory = name;
    if (name == "relax-boltzmann") {
        s.description = "hot uniform gas between diffuse walls, unity correlation, ideal H^(c)";
        s.expect.relaxation = true;
    } else if (name == "equilibrium-hold") {
        s.description = "resting wall Maxwellian at uniform density, held for 1000 steps";
        c.initial.temperature = c.physics.wall_temperature;
        s.expect.equilibrium = true;
    } else if (name == "relax-vlasov") {
        s.description = "relax-boltzmann with a weak mean-field attraction";
        c.vlasov = {true, 0.01, 6.0, 0.1};
        s.expect.relaxation = true;
    } else if (name == "relax-dense") {
        s.description = "denser gas with the Carnahan-Starling contact value and surrogate H^(c)";
        c.physics.sigma = 0.03;
        c.physics.density = 3500.0;
        c.correlation.model = CorrelationKind::ContactCS;
        c.correlation.h_collisional = HcMode::CSSurrogate;
        c.integrator.dt = 0.0015;
        c.integrator.t_end = 1.5;
        c.output.every = 50;
        c.output.snapshot_every = 500;
    } else {
        std::string known;
        for (const auto& n : scenario_names()) known += (known.empty() ? "" : ", ") + n;
        throw std::invalid_argument("unknown scenario '" + name + "' (" + known + ")");
    }
    return s;
}

nlohmann::json Verdict::to_json() const {
    return {{"name", name},         {"pass", pass}, {"counted", counted}, {"measured", measured},
            {"tolerance", tolerance}, {"note", note}};
}

double free_energy_lower_bound(const SimulationConfig& config, const Solver& solver, double mass) {
    const auto& setup = solver.setup();
    if (config.correlation.h_collisional == HcMode::ConfigOracle) return -std::numeric_limits<double>::infinity();
    const auto& ps = *setup.phase_space;
    const auto fw = unit_maxwellian_nodes(ps.velocity, setup.wall_temperature, setup.gas.gas_constant);
    double mw = 0.0;
    for (double v : fw) mw += v;
    mw *= ps.velocity.weight() * ps.space.length();
    const double rt = setup.gas.gas_constant * setup.wall_temperature;
    double bound = rt * (mass * std::log(mass / mw) - mass * std::log(mass * config.physics.transverse_area));
    if (const VlasovField* v = solver.vlasov()) {
        const double dx = ps.space.dx();
        bound += 0.5 * v->min_pair_integral() * (mass / dx) * (mass / dx);
    }
    return bound;
}

std::vector<Verdict> evaluate_verdicts(const SimulationConfig& config, const Solver& solver, const RunResult& result,
                                       const Expectations& expect) {
    std::vector<Verdict> out;
    const auto& series = result.series;
    const bool vlasov = solver.vlasov() != nullptr;
    const long steps = result.final_state.step;

    MonotonicityMonitor mon(vlasov ? "Fprime" : "F");
    for (const auto& r : series) mon.record(r.t, vlasov ? r.free_energy_prime : r.free_energy, r.magnitude);
    const auto mv = mon.verdict();
    {
        Verdict v{"monotonicity", mv.pass, true, mv.largest_increase, mv.tolerance, ""};
        v.note = (vlasov ? "F'" : "F") + std::string(" non-increasing between rows");
        if (config.correlation.h_collisional == HcMode::CSSurrogate) {
            v.counted = false;
            v.note += "; informational: the CS surrogate is not the configurational H^(c)";
        }
        if (!mv.violations.empty()) v.note += "; " + std::to_string(mv.violations.size()) + " violations";
        out.push_back(v);
    }
    {
        double drift = 0.0;
        for (const auto& r : series) drift = std::max(drift, std::abs(r.mass - result.initial_mass) / result.initial_mass);
        const double tol = 1e-10 * std::max(1.0, static_cast<double>(steps) / 1000.0);
        out.push_back({"mass_conservation", drift <= tol, true, drift, tol, "relative drift of the total mass"});
    }
    {
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& r : series) worst = std::max({worst, r.dg_left, r.dg_right});
        const double tol = 1e-10 * std::max(1.0, result.initial_mass);
        out.push_back({"dg_boundary_flux", worst <= tol, true, worst, tol, "largest wall entropy flux, must be <= 0"});
    }
    out.push_back({"positivity", result.max_clipped_fraction <= 1e-8, true, result.max_clipped_fraction, 1e-8,
                   "largest clipped mass per step over total mass"});
    if (vlasov) {
        out.push_back({"self_force", result.max_self_force <= 1e-12, true, result.max_self_force, 1e-12,
                       "largest |int rho F_x dx|"});
        const double bound = free_energy_lower_bound(config, solver, result.initial_mass);
        double lowest = std::numeric_limits<double>::infinity();
        for (const auto& r : series) lowest = std::min(lowest, r.free_energy_prime);
        out.push_back({"bounded_below", lowest >= bound, std::isfinite(bound), lowest, bound,
                       "smallest F' against the a priori lower bound"});
    }
    if (expect.equilibrium) {
        out.push_back({"equilibrium_drift", result.max_equilibrium_drift <= 1e-6, true, result.max_equilibrium_drift,
                       1e-6, "max relative drift of rho, v/sqrt(R T_w), T"});
        double dev = 0.0;
        for (const auto& r : series) dev = std::max(dev, std::abs(r.free_energy - series.front().free_energy));
        const double tol = mv.tolerance * static_cast<double>(std::max<std::size_t>(series.size(), 2) - 1);
        out.push_back({"equilibrium_free_energy", dev <= tol, true, dev, tol, "|F(t) - F(0)| <= eps_step * steps"});
    }
    if (expect.relaxation) {
        const double tw = config.physics.wall_temperature;
        const double dev = std::abs(series.back().t_mean - tw) / tw;
        out.push_back({"relaxation", dev <= 0.01, true, dev, 0.01, "final |T_mean - T_w|/T_w"});
    }
    return out;
}

namespace {

void write_row(std::ostream& os, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
    os << "\n";
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& s) {
    std::ofstream os(path);
    os << std::setprecision(17) << "x,rho,v_x,T,pc_xx,pc_yy,qc_x\n";
    for (std::size_t k = 0; k < s.x.size(); ++k)
        write_row(os, {s.x[k], s.rho[k], s.v_x[k], s.temperature[k], s.pc_xx[k], s.pc_yy[k], s.qc_x[k]});
}

void dump_state(const std::filesystem::path& path, const Distribution& f, double t) {
    std::ofstream os(path);
    const auto& ps = f.phase_space();
    os << std::setprecision(17) << "# t=" << t << "\ncell,x,xi_x,xi_y,xi_z,f\n";
    for (int k = 0; k < f.cells(); ++k)
        for (int n = 0; n < f.nodes(); ++n) {
            const Vec3& v = ps.velocity.node(n);
            os << k << "," << ps.space.center(k) << "," << v.x << "," << v.y << "," << v.z << "," << f.at(k, n) << "\n";
        }
}

void write_gnuplot(const std::filesystem::path& path, bool vlasov) {
    std::ofstream os(path);
    os << "set datafile separator ','\n"
          "set terminal pngcairo size 900,600\n"
          "set output 'free_energy.png'\n"
          "set xlabel 't'\n"
          "set ylabel 'free energy'\n"
          "set grid\n";
    os << "plot 'series.csv' using 1:7 with linespoints title 'F'";
    if (vlasov) os << ", '' using 1:8 with linespoints title \"F'\"";
    os << "\n";
}

bool wants(const SimulationConfig& c, const char* format) {
    return std::find(c.output.formats.begin(), c.output.formats.end(), format) != c.output.formats.end();
}

}  // namespace

RunOutcome run_simulation(const SimulationConfig& config, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    set_thread_count(options.threads);
    RunOutcome outcome;
    const std::filesystem::path dir(config.output.directory);
    const bool write = options.write_outputs;
    const bool csv = write && wants(config, "csv");
    if (write) std::filesystem::create_directories(dir);

    Solver solver(make_solver_setup(config));
    auto initial = make_initial_state(config, solver.setup().phase_space);
    auto settings = make_run_settings(config);

    std::ofstream series;
    if (csv) {
        series.open(dir / "series.csv");
        series << std::setprecision(17);
        const auto& cols = DiagnosticsRecord::columns();
        for (std::size_t i = 0; i < cols.size(); ++i) series << (i ? "," : "") << cols[i];
        series << "\n";
    }
    const long total_steps = std::lround(settings.t_end / settings.dt);
    auto observer = [&](const DiagnosticsRecord& r, long step) {
        if (csv) {
            write_row(series, r.values());
            series.flush();
        }
        if (options.progress)
            spdlog::info("step {}/{} t={:.4f} F={:.10e} T_mean={:.5f}", step, total_steps, r.t,
                         solver.vlasov() ? r.free_energy_prime : r.free_energy, r.t_mean);
    };

    nlohmann::json manifest;
    manifest["scenario"] = options.scenario;
    manifest["config_hash"] = config_hash(config);
    manifest["code_version"] = ENSKOG_VERSION;
    manifest["seeds"] = {{"collision", config.integrator.seed}, {"correlation", config.correlation.seed}};
    manifest["threads"] = options.threads;
    manifest["pairing"] = {{"correlation", to_string(config.correlation.model)},
                           {"h_collisional", to_string(config.correlation.h_collisional)}};

    try {
        outcome.result = run(solver, std::move(initial), settings, observer);
    } catch (const NumericalAbort& e) {
        spdlog::error("numerical abort at t={}: {}", e.time(), e.what());
        outcome.exit_code = 3;
        manifest["aborted"] = true;
        manifest["abort_reason"] = e.what();
        manifest["abort_time"] = e.time();
        if (write && e.state()) {
            dump_state(dir / "abort_state.csv", *e.state(), e.time());
            manifest["outputs"] = {"series.csv", "abort_state.csv", "manifest.json"};
        }
        manifest["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (write) std::ofstream(dir / "manifest.json") << manifest.dump(2) << "\n";
        outcome.manifest = manifest;
        return outcome;
    }

    outcome.verdicts = evaluate_verdicts(config, solver, *outcome.result, options.expect);
    bool ok = true;
    for (const auto& v : outcome.verdicts)
        if (v.counted && !v.pass) ok = false;
    outcome.exit_code = ok ? 0 : 1;

    std::vector<std::string> outputs;
    nlohmann::json snaps = nlohmann::json::array();
    if (csv) {
        outputs.push_back("series.csv");
        for (std::size_t i = 0; i < outcome.result->snapshots.size(); ++i) {
            std::ostringstream name;
            name << "snapshot_" << std::setw(4) << std::setfill('0') << i << ".csv";
            write_snapshot(dir / name.str(), outcome.result->snapshots[i]);
            outputs.push_back(name.str());
            snaps.push_back({{"file", name.str()}, {"t", outcome.result->snapshots[i].t}});
        }
        dump_state(dir / "final_state.csv", outcome.result->final_state.f, outcome.result->final_state.t);
        outputs.push_back("final_state.csv");
    }
    if (write) {
        std::ofstream(dir / "config.toml") << serialize(config);
        outputs.push_back("config.toml");
    }
    if (write && wants(config, "gnuplot")) {
        write_gnuplot(dir / "free_energy.gp", solver.vlasov() != nullptr);
        outputs.push_back("free_energy.gp");
    }
    if (write && wants(config, "json")) outputs.push_back("manifest.json");

    manifest["aborted"] = false;
    manifest["steps"] = outcome.result->final_state.step;
    manifest["final_time"] = outcome.result->final_state.t;
    manifest["snapshots"] = snaps;
    manifest["outputs"] = outputs;
    manifest["projection_warnings"] = outcome.result->projection_warnings;
    manifest["max_collision_dt_frequency"] = outcome.result->max_frequency_dt;
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : outcome.verdicts) verdicts.push_back(v.to_json());
    manifest["verdicts"] = verdicts;
    manifest["pass"] = ok;
    if (!outcome.result->series.empty()) {
        const auto& first = outcome.result->series.front();
        const auto& last = outcome.result->series.back();
        manifest["energy"] = {{"kinetic_initial", first.energy},
                              {"potential_initial", first.free_energy_prime - first.free_energy},
                              {"F_initial", first.free_energy},
                              {"F_final", last.free_energy},
                              {"Fprime_initial", first.free_energy_prime},
                              {"Fprime_final", last.free_energy_prime}};
    }
    manifest["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (write && wants(config, "json")) std::ofstream(dir / "manifest.json") << manifest.dump(2) << "\n";
    outcome.manifest = manifest;
    return outcome;
}

}  // namespace enskog
