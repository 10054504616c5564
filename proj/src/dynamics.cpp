#include "enskog/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "enskog/parallel.hpp"

namespace enskog {

Solver::Solver(SolverSetup setup)
    : setup_(std::move(setup)),
      collision_(std::make_unique<CollisionOperator>(setup_.phase_space, setup_.gas, setup_.correlation,
                                                     setup_.collision)),
      left_(setup_.phase_space->velocity, setup_.left, setup_.wall_temperature, setup_.gas.gas_constant, WallSide::Left),
      right_(setup_.phase_space->velocity, setup_.right, setup_.wall_temperature, setup_.gas.gas_constant,
             WallSide::Right) {
    if (setup_.vlasov && setup_.vlasov->enabled) {
        vlasov_ = std::make_unique<VlasovField>(setup_.phase_space->space, *setup_.vlasov, setup_.gas.mass);
        vlasov_rate_ = vlasov_->transport_rate(setup_.wall_temperature, setup_.gas.gas_constant,
                                               setup_.phase_space->velocity);
    }
}

double Solver::max_advection_dt(double cfl) const {
    const auto& vg = setup_.phase_space->velocity;
    return cfl * setup_.phase_space->space.dx() / std::abs(vg.axis_value(0));
}

std::vector<double> Solver::wall_state(const Distribution& f, WallSide side) const {
    const int k = side == WallSide::Left ? 0 : f.cells() - 1;
    const auto c = f.cell(k);
    std::vector<double> w(c.begin(), c.end());
    for (double& v : w) v = std::max(v, 0.0);
    wall(side).reflect(w);
    return w;
}

void Solver::advect(Distribution& f, double dt) const {
    const auto& vg = setup_.phase_space->velocity;
    const int nx = f.cells();
    const int nv = f.nodes();
    const auto ghost_left = wall_state(f, WallSide::Left);
    const auto ghost_right = wall_state(f, WallSide::Right);
    const double c = dt / setup_.phase_space->space.dx();
    auto& data = f.data();
    const auto stride = static_cast<std::size_t>(nv);
    parallel_for(nv, [&](int b, int e) {
        std::vector<double> flux(static_cast<std::size_t>(nx + 1));
        for (int n = b; n < e; ++n) {
            const double u = vg.node(n).x;
            const auto nn = static_cast<std::size_t>(n);
            // flux[i] sits on the face between cells i-1 and i
            if (u > 0.0) {
                flux[0] = u * ghost_left[nn];
                for (int i = 0; i < nx; ++i) flux[static_cast<std::size_t>(i + 1)] = u * data[static_cast<std::size_t>(i) * stride + nn];
            } else {
                for (int i = 0; i < nx; ++i) flux[static_cast<std::size_t>(i)] = u * data[static_cast<std::size_t>(i) * stride + nn];
                flux[static_cast<std::size_t>(nx)] = u * ghost_right[nn];
            }
            for (int i = 0; i < nx; ++i)
                data[static_cast<std::size_t>(i) * stride + nn] -= c * (flux[static_cast<std::size_t>(i + 1)] - flux[static_cast<std::size_t>(i)]);
        }
    });
}

double clip_negative(Distribution& f) {
    double removed = 0.0;
    const double w = f.phase_space().velocity.weight() * f.phase_space().space.dx();
    for (int k = 0; k < f.cells(); ++k) {
        auto c = f.cell(k);
        double neg = 0.0;
        double total = 0.0;
        for (double v : c) {
            total += v;
            if (v < 0.0) neg += v;
        }
        if (neg == 0.0) continue;
        if (!(total > 0.0)) throw std::runtime_error("cell mass became non-positive");
        const double scale = total / (total - neg);
        for (double& v : c) v = v < 0.0 ? 0.0 : v * scale;
        removed += -neg * w;
    }
    return removed;
}

const std::vector<double>& Solver::last_collision_term(const Distribution& f) {
    if (last_j_.empty()) last_j_ = collision_->apply(f).j;
    return last_j_;
}

StepReport Solver::step(SimulationState& state, double dt) {
    StepReport rep;
    Distribution& f = state.f;
    auto abort = [&](const std::string& why) {
        throw NumericalAbort(why, std::make_shared<const Distribution>(f), state.t);
    };

    advect(f, 0.5 * dt);

    auto col = collision_->apply(f);
    rep.max_frequency = col.max_frequency;
    rep.projection_warning = col.projection_warning;
    if (dt * col.max_frequency > setup_.collision_stability)
        abort("collision stability violated: dt*max(loss/f) = " + std::to_string(dt * col.max_frequency));
    auto& data = f.data();
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += dt * col.j[i];
    last_j_ = std::move(col.j);

    if (vlasov_) {
        const auto rho = f.density();
        const auto force = vlasov_->force(rho);
        double fmax = 0.0;
        for (std::size_t k = 0; k < force.size(); ++k) {
            rep.self_force += rho[k] * force[k];
            fmax = std::max(fmax, std::abs(force[k]));
        }
        rep.self_force *= setup_.phase_space->space.dx();
        if (dt * fmax * vlasov_rate_ > 1.0) abort("force transport stability violated");
        vlasov_->transport(f, force, dt, setup_.wall_temperature, setup_.gas.gas_constant);
    }

    advect(f, 0.5 * dt);

    if (!f.all_finite()) abort("non-finite distribution");
    try {
        rep.clipped_mass = clip_negative(f);
    } catch (const std::runtime_error& e) {
        abort(e.what());
    }
    state.t += dt;
    ++state.step;
    return rep;
}

const std::vector<std::string>& DiagnosticsRecord::columns() {
    static const std::vector<std::string> c{"t",       "mass",          "mom_x",         "E",         "Hk",
                                            "Hc",      "F",             "Fprime",        "dF_dt",     "DG_flux_left",
                                            "DG_flux_right", "J_momentum_total", "J_energy_total",   "T_mean",    "T_max_dev"};
    return c;
}

std::vector<double> DiagnosticsRecord::values() const {
    return {t,      mass,     mom_x,          energy,        h_kinetic,     h_collisional, free_energy, free_energy_prime,
            df_dt,  dg_left,  dg_right,       domain_momentum, domain_energy, t_mean,      t_max_dev};
}

DiagnosticsRecord record_state(Solver& solver, const Distribution& f, double t, const HcContext& hc) {
    const auto& setup = solver.setup();
    const double tw = setup.wall_temperature;
    const double r = setup.gas.gas_constant;
    DiagnosticsRecord rec;
    rec.t = t;
    std::unique_ptr<PairCorrelation> g;
    const ConfigState* state = nullptr;
    if (hc.mode == HcMode::ConfigOracle) {
        g = std::make_unique<PairCorrelation>(setup.correlation, f.phase_space().space, f.density(), setup.gas);
        state = g->oracle_state();
    }
    const auto fe = free_energy(f, setup.correlation.kind, hc, tw, solver.vlasov(), state);
    rec.mass = fe.mass;
    rec.energy = fe.kinetic_energy;
    rec.h_kinetic = fe.h_kinetic;
    rec.h_collisional = fe.h_collisional;
    rec.free_energy = fe.free_energy;
    rec.free_energy_prime = fe.free_energy_prime;
    rec.magnitude = fe.magnitude;

    const auto m = moments(f, tw, r);
    const double dx = f.phase_space().space.dx();
    double mass = 0.0;
    double tsum = 0.0;
    for (std::size_t k = 0; k < m.rho.size(); ++k) {
        rec.mom_x += m.rho[k] * m.v[k].x * dx;
        mass += m.rho[k];
        tsum += m.rho[k] * m.temperature[k];
        rec.t_max_dev = std::max(rec.t_max_dev, std::abs(m.temperature[k] - tw) / tw);
    }
    rec.t_mean = mass > 0.0 ? tsum / mass : tw;

    const auto& vg = f.phase_space().velocity;
    rec.dg_left = dg_boundary_flux(vg, solver.wall_state(f, WallSide::Left), tw, r, WallSide::Left);
    rec.dg_right = dg_boundary_flux(vg, solver.wall_state(f, WallSide::Right), tw, r, WallSide::Right);

    const auto l1 = domain_moment_residuals(solver.collision(), solver.last_collision_term(f));
    rec.domain_momentum = l1.momentum.x;
    rec.domain_energy = l1.energy;
    return rec;
}

Snapshot snapshot_state(const Solver& solver, const Distribution& f, double t) {
    const auto& setup = solver.setup();
    Snapshot s;
    s.t = t;
    const auto& sg = f.phase_space().space;
    const auto m = moments(f, setup.wall_temperature, setup.gas.gas_constant);
    const auto g = solver.collision().correlation_for(f);
    for (int k = 0; k < sg.cells(); ++k) s.x.push_back(sg.center(k));
    const auto fl = collisional_fluxes(f, g, solver.collision().projected(), setup.gas, s.x, setup.wall_temperature);
    for (std::size_t k = 0; k < s.x.size(); ++k) {
        s.rho.push_back(m.rho[k]);
        s.v_x.push_back(m.v[k].x);
        s.temperature.push_back(m.temperature[k]);
        s.pc_xx.push_back(fl.p[k][0]);
        s.pc_yy.push_back(fl.p[k][1]);
        s.qc_x.push_back(fl.q[k].x);
    }
    return s;
}

RunResult run(Solver& solver, Distribution initial, const RunSettings& settings, const RunObserver& observer) {
    if (!(settings.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (settings.output_every < 1) throw std::invalid_argument("output cadence must be at least one step");
    const long steps = std::lround(settings.t_end / settings.dt);
    const auto& setup = solver.setup();
    const double tw = setup.wall_temperature;
    const double r = setup.gas.gas_constant;

    RunResult res{SimulationState{0.0, 0, std::move(initial)}, {}, {}, 0.0, 0.0, 0.0, 0, 0.0, 0.0};
    SimulationState& st = res.final_state;
    res.initial_mass = st.f.total_mass();
    const auto m0 = moments(st.f, tw, r);
    const double vscale = std::sqrt(r * tw);

    auto emit = [&]() {
        auto rec = record_state(solver, st.f, st.t, settings.hc);
        if (!res.series.empty()) {
            const auto& prev = res.series.back();
            rec.df_dt = (rec.free_energy - prev.free_energy) / (rec.t - prev.t);
        }
        res.series.push_back(rec);
        if (observer) observer(rec, st.step);
    };
    auto drift = [&]() {
        const auto m = moments(st.f, tw, r);
        double d = 0.0;
        for (std::size_t k = 0; k < m.rho.size(); ++k) {
            if (m0.rho[k] > 0.0) d = std::max(d, std::abs(m.rho[k] - m0.rho[k]) / m0.rho[k]);
            d = std::max(d, norm(m.v[k] - m0.v[k]) / vscale);
            d = std::max(d, std::abs(m.temperature[k] - m0.temperature[k]) / m0.temperature[k]);
        }
        res.max_equilibrium_drift = std::max(res.max_equilibrium_drift, d);
    };

    emit();
    res.snapshots.push_back(snapshot_state(solver, st.f, st.t));
    for (long s = 1; s <= steps; ++s) {
        const auto rep = solver.step(st, settings.dt);
        res.max_clipped_fraction = std::max(res.max_clipped_fraction, rep.clipped_mass / res.initial_mass);
        res.max_self_force = std::max(res.max_self_force, std::abs(rep.self_force));
        res.max_frequency_dt = std::max(res.max_frequency_dt, rep.max_frequency * settings.dt);
        if (rep.projection_warning) {
            if (res.projection_warnings == 0)
                spdlog::warn("mass projection exceeded 1% of max|J| at step {} (further occurrences counted)", s);
            ++res.projection_warnings;
        }
        if (rep.clipped_mass > 0.0)
            spdlog::debug("step {}: clipped {:.3e} of mass", s, rep.clipped_mass / res.initial_mass);
        drift();
        if (s % settings.output_every == 0 || s == steps) emit();
        if ((settings.snapshot_every > 0 && s % settings.snapshot_every == 0) || s == steps)
            res.snapshots.push_back(snapshot_state(solver, st.f, st.t));
    }
    return res;
}

}  // namespace enskog
