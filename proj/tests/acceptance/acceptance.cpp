// Acceptance run: one PASS/FAIL line per criterion, details in acceptance.json.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "enskog/simulation.hpp"
#include "enskog/verify.hpp"

using namespace enskog;
using nlohmann::json;

namespace {

struct Line {
    int id = 0;
    std::string title;
    bool pass = true;
    json details = json::object();
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what, double measured, double tolerance) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-4s %-40s measured %.4e  tolerance %.4e", ok ? "ok" : "FAIL", what.c_str(),
                      measured, tolerance);
        notes.emplace_back(buf);
        details[what] = {{"pass", ok}, {"measured", measured}, {"tolerance", tolerance}};
        pass = pass && ok;
    }
};

const Verdict& find(const std::vector<Verdict>& vs, const std::string& name) {
    for (const auto& v : vs)
        if (v.name == name) return v;
    throw std::runtime_error("missing verdict " + name);
}

const Check& find(const Report& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    throw std::runtime_error("missing check " + name);
}

struct ScenarioRun {
    RunOutcome outcome;
    long steps = 0;
    double seconds = 0.0;
};

ScenarioRun run_scenario(const std::string& name, const std::filesystem::path& root) {
    auto sc = make_scenario(name);
    sc.config.output.directory = (root / name).string();
    RunOptions opt;
    opt.scenario = name;
    opt.expect = sc.expect;
    opt.progress = false;
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioRun r;
    r.outcome = run_simulation(sc.config, opt);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.outcome.result) r.steps = r.outcome.result->final_state.step;
    std::cerr << "  " << name << ": exit " << r.outcome.exit_code << ", " << r.steps << " steps, " << r.seconds
              << " s\n";
    return r;
}

// eps_step with the time-step count: 1e-3 |F(0) - F(end)| / steps, plus the round-off floor
// of the summed terms.
void monotone(Line& line, const RunResult& res, bool prime) {
    const auto& s = res.series;
    const double f0 = prime ? s.front().free_energy_prime : s.front().free_energy;
    const double f1 = prime ? s.back().free_energy_prime : s.back().free_energy;
    double magnitude = 0.0;
    for (const auto& r : s) magnitude = std::max(magnitude, r.magnitude);
    const double eps = 1e-3 * std::abs(f0 - f1) / static_cast<double>(res.final_state.step) +
                       64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    double largest = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double a = prime ? s[i - 1].free_energy_prime : s[i - 1].free_energy;
        const double b = prime ? s[i].free_energy_prime : s[i].free_energy;
        largest = std::max(largest, b - a);
    }
    line.require(largest <= eps, prime ? "largest F' increase per row" : "largest F increase per row", largest, eps);
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path root = argc > 1 ? argv[1] : "acceptance_runs";
    std::filesystem::create_directories(root);
    spdlog::set_level(spdlog::level::warn);
    const auto start = std::chrono::steady_clock::now();
    std::vector<Line> lines;

    std::cerr << "running scenarios\n";
    std::map<std::string, ScenarioRun> runs;
    for (const auto& name : scenario_names()) runs[name] = run_scenario(name, root);

    auto result_of = [&](const std::string& name) -> const RunResult* {
        const auto& o = runs.at(name).outcome;
        return o.result ? &*o.result : nullptr;
    };

    {
        Line l{1, "free-energy monotonicity, relax-boltzmann"};
        if (const auto* res = result_of("relax-boltzmann")) {
            monotone(l, *res, false);
            const auto& rel = find(runs["relax-boltzmann"].outcome.verdicts, "relaxation");
            l.require(rel.pass, "final |T_mean - T_w|/T_w", rel.measured, rel.tolerance);
            l.details["seconds"] = runs["relax-boltzmann"].seconds;
        } else {
            l.require(false, "run aborted", 1.0, 0.0);
        }
        lines.push_back(l);
    }
    {
        Line l{2, "equilibrium fixed point, equilibrium-hold"};
        if (result_of("equilibrium-hold")) {
            const auto& vs = runs["equilibrium-hold"].outcome.verdicts;
            const auto& d = find(vs, "equilibrium_drift");
            l.require(d.pass, "max drift of rho, v, T", d.measured, d.tolerance);
            const auto& f = find(vs, "equilibrium_free_energy");
            l.require(f.pass, "|F(t) - F(0)|", f.measured, f.tolerance);
            l.require(runs["equilibrium-hold"].steps >= 1000, "steps", runs["equilibrium-hold"].steps, 1000);
        } else {
            l.require(false, "run aborted", 1.0, 0.0);
        }
        lines.push_back(l);
    }

    std::cerr << "domain moments under sphere refinement\n";
    {
        Line l{3, "domain moments of J under sphere refinement"};
        std::vector<DomainMomentPoint> pts;
        for (int order : {8, 16, 32}) pts.push_back(domain_moment_point(order, 20));
        json series = json::array();
        for (const auto& p : pts)
            series.push_back({{"order", p.sphere_order}, {"momentum", p.momentum}, {"energy", p.energy}});
        l.details["series"] = series;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const std::string tag = std::to_string(pts[i - 1].sphere_order) + "->" + std::to_string(pts[i].sphere_order);
            l.require(pts[i].momentum <= 0.5 * pts[i - 1].momentum, "momentum ratio " + tag,
                      pts[i].momentum / pts[i - 1].momentum, 0.5);
            l.require(pts[i].energy <= 0.5 * pts[i - 1].energy, "energy ratio " + tag, pts[i].energy / pts[i - 1].energy,
                      0.5);
        }
        double ws = 0.0, wh = 0.0;
        for (const auto& p : pts) {
            ws = std::max(ws, p.wall_stress);
            wh = std::max(wh, p.wall_heat);
        }
        l.require(ws == 0.0, "wall p^(c)", ws, 0.0);
        l.require(wh == 0.0, "wall q^(c)", wh, 0.0);
        lines.push_back(l);
    }

    std::cerr << "boundary suite\n";
    {
        Line l{4, "wall entropy flux inequality"};
        const auto rep = verify_boundary(1);
        double dg = -std::numeric_limits<double>::infinity(), eq = 0.0, norm = 0.0, strict = -1.0;
        for (const auto& c : rep.checks) {
            if (c.name.ends_with("_dg_random")) dg = std::max(dg, c.value);
            if (c.name.ends_with("_dg_equilibrium")) eq = std::max(eq, c.value);
            if (c.name.ends_with("_normalization")) norm = std::max(norm, c.value);
            if (c.name.ends_with("_dg_strict")) strict = std::max(strict, c.value);
        }
        l.require(dg <= 1e-10, "largest flux, 100 states x 3 kernels x 2 walls", dg, 1e-10);
        l.require(eq <= 1e-8, "|flux| at f_w", eq, 1e-8);
        l.require(norm <= 1e-6, "kernel normalization", norm, 1e-6);
        l.require(strict < 0.0, "flux for 1% off f_w", strict, 0.0);
        l.details["report"] = rep.to_json();
        lines.push_back(l);
    }

    std::cerr << "flux suite\n";
    {
        Line l{5, "collisional pressure in uniform equilibrium"};
        const auto rep = verify_fluxes(1);
        const auto& c = find(rep, "stress_closed_form");
        l.require(c.pass, "max |p_ii/closed form - 1|", c.value, c.tolerance);
        const auto& o = find(rep, "stress_off_diagonal");
        l.require(o.pass, "max |p_ij|/p_ii", o.value, o.tolerance);
        l.details["report"] = rep.to_json();
        lines.push_back(l);
    }

    std::cerr << "correlation suite\n";
    {
        Line l{6, "configuration-integral oracle"};
        const auto rep = verify_correlation(1);
        for (const auto& c : rep.checks) {
            if (c.name.starts_with("ideal_limit") || c.name == "pair_closed_form" ||
                c.name.starts_with("reduction_identity"))
                l.require(c.pass, c.name, c.value, c.tolerance);
        }
        l.details["report"] = rep.to_json();
        lines.push_back(l);
    }

    std::cerr << "identity suite\n";
    {
        Line l{7, "moment exchange and energy forms"};
        const auto rep = verify_identities(1);
        for (const char* name : {"moment_exchange", "energy_forms", "moment_exchange_refined", "energy_forms_refined"}) {
            const auto& c = find(rep, name);
            l.require(c.pass, name, c.value, c.tolerance);
        }
        l.details["report"] = rep.to_json();
        lines.push_back(l);
    }
    {
        Line l{8, "mean-field free energy, relax-vlasov"};
        if (const auto* res = result_of("relax-vlasov")) {
            monotone(l, *res, true);
            const auto& vs = runs["relax-vlasov"].outcome.verdicts;
            const auto& sf = find(vs, "self_force");
            l.require(sf.pass, "max |total self-force|", sf.measured, sf.tolerance);
            const auto& bb = find(vs, "bounded_below");
            l.require(bb.pass, "min F' minus lower bound", bb.measured - bb.tolerance, 0.0);
            const auto& s = res->series;
            double ratio = 0.0;
            for (const auto& r : s) ratio = std::max(ratio, std::abs(r.free_energy_prime - r.free_energy) / r.energy);
            l.require(ratio <= 0.1, "|potential|/kinetic energy", ratio, 0.1);
        } else {
            l.require(false, "run aborted", 1.0, 0.0);
        }
        lines.push_back(l);
    }

    std::cerr << "determinism\n";
    {
        Line l{9, "mass conservation and determinism"};
        for (auto& [name, run] : runs) {
            if (!run.outcome.result) {
                l.require(false, name + " aborted", 1.0, 0.0);
                continue;
            }
            const auto& m = find(run.outcome.verdicts, "mass_conservation");
            l.require(m.pass, name + " mass drift", m.measured, m.tolerance);
        }
        auto sc = make_scenario("relax-boltzmann");
        sc.config.integrator.t_end = 0.2;
        sc.config.output.every = 5;
        RunOptions opt;
        opt.write_outputs = false;
        opt.progress = false;
        opt.threads = 1;
        const auto a = run_simulation(sc.config, opt);
        opt.threads = 2;
        const auto b = run_simulation(sc.config, opt);
        bool same = a.result && b.result && a.result->final_state.f.data() == b.result->final_state.f.data() &&
                    a.result->series.size() == b.result->series.size();
        if (same) {
            for (std::size_t i = 0; i < a.result->series.size(); ++i) {
                const auto va = a.result->series[i].values();
                const auto vb = b.result->series[i].values();
                same = same && std::memcmp(va.data(), vb.data(), va.size() * sizeof(double)) == 0;
            }
        }
        l.require(same, "bitwise rerun, 1 and 2 threads", same ? 0.0 : 1.0, 0.0);
        lines.push_back(l);
    }

    json out;
    out["criteria"] = json::array();
    int failed = 0;
    for (const auto& l : lines) {
        std::printf("criterion %d: %s  %s\n", l.id, l.pass ? "PASS" : "FAIL", l.title.c_str());
        for (const auto& n : l.notes) std::printf("    %s\n", n.c_str());
        out["criteria"].push_back({{"id", l.id}, {"title", l.title}, {"pass", l.pass}, {"details", l.details}});
        failed += l.pass ? 0 : 1;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out["seconds"] = seconds;
    std::ofstream(root / "acceptance.json") << out.dump(2) << "\n";
    std::printf("%d of %zu criteria passed in %.0f s\n", static_cast<int>(lines.size()) - failed, lines.size(), seconds);
    return failed == 0 ? 0 : 1;
}
