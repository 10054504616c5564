#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "enskog/boundary.hpp"
#include "enskog/collision.hpp"
#include "enskog/diagnostics.hpp"
#include "enskog/vlasov.hpp"

namespace enskog {

/// Raised on NaN, loss of positivity beyond repair or a violated stability
/// bound. Carries the offending state for dumping.
class NumericalAbort : public std::runtime_error {
public:
    NumericalAbort(const std::string& what, std::shared_ptr<const Distribution> state, double t)
        : std::runtime_error(what), state_(std::move(state)), t_(t) {}
    const std::shared_ptr<const Distribution>& state() const { return state_; }
    double time() const { return t_; }

private:
    std::shared_ptr<const Distribution> state_;
    double t_;
};

struct SimulationState {
    double t = 0.0;
    long step = 0;
    Distribution f;
};

struct StepReport {
    double clipped_mass = 0.0;
    double max_frequency = 0.0;
    bool projection_warning = false;
    double self_force = 0.0;  ///< int rho F_x dx of the Vlasov force used in the step
};

/// Everything needed to advance the kinetic equation.
struct SolverSetup {
    PhaseSpacePtr phase_space;
    GasProperties gas;
    CorrelationModel correlation;
    CollisionSettings collision;
    WallSpec left;
    WallSpec right;
    double wall_temperature = 1.0;
    std::optional<VlasovSettings> vlasov;
    double collision_stability = 0.5;  ///< bound on dt max(loss/f)
};

class Solver {
public:
    explicit Solver(SolverSetup setup);

    const SolverSetup& setup() const { return setup_; }
    const CollisionOperator& collision() const { return *collision_; }
    const WallKernel& wall(WallSide side) const { return side == WallSide::Left ? left_ : right_; }
    const VlasovField* vlasov() const { return vlasov_.get(); }

    /// Upwind finite-volume transport over dt. Wall faces take the reflected
    /// state built from the adjacent cell.
    void advect(Distribution& f, double dt) const;
    /// Full-range distribution at a wall face: impinging part from the
    /// adjacent cell, emitted part from the kernel.
    std::vector<double> wall_state(const Distribution& f, WallSide side) const;

    /// advect(dt/2), collisions, Vlasov force, advect(dt/2). The collision
    /// term of the step is kept for diagnostics.
    StepReport step(SimulationState& state, double dt);
    /// J from the most recent step, or from f when no step was taken.
    const std::vector<double>& last_collision_term(const Distribution& f);

    /// Largest dt allowed by the advection CFL bound.
    double max_advection_dt(double cfl) const;

private:
    SolverSetup setup_;
    std::unique_ptr<CollisionOperator> collision_;
    WallKernel left_;
    WallKernel right_;
    std::unique_ptr<VlasovField> vlasov_;
    double vlasov_rate_ = 0.0;
    std::vector<double> last_j_;
};

/// Zeroes negative entries and rescales the remaining ones cell by cell so
/// that each cell keeps its mass. Returns the removed mass per unit area.
double clip_negative(Distribution& f);

/// One row of the time series.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double mom_x = 0.0;
    double energy = 0.0;
    double h_kinetic = 0.0;
    double h_collisional = 0.0;
    double free_energy = 0.0;
    double free_energy_prime = 0.0;
    double df_dt = 0.0;
    double dg_left = 0.0;
    double dg_right = 0.0;
    double domain_momentum = 0.0;
    double domain_energy = 0.0;
    double t_mean = 0.0;
    double t_max_dev = 0.0;
    double magnitude = 0.0;  ///< size of the terms of F', not written to the series

    static const std::vector<std::string>& columns();
    std::vector<double> values() const;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> rho;
    std::vector<double> v_x;
    std::vector<double> temperature;
    std::vector<double> pc_xx;
    std::vector<double> pc_yy;
    std::vector<double> qc_x;
};

struct RunSettings {
    double dt = 1e-3;
    double t_end = 0.0;
    double cfl = 0.9;
    int output_every = 1;    ///< steps between time-series rows
    int snapshot_every = 0;  ///< steps between snapshots, 0 = first and last only
    HcContext hc;
};

struct RunResult {
    SimulationState final_state;
    std::vector<DiagnosticsRecord> series;
    std::vector<Snapshot> snapshots;
    double max_clipped_fraction = 0.0;  ///< largest clipped mass per step over total mass
    double max_self_force = 0.0;
    double max_frequency_dt = 0.0;      ///< largest dt max(loss/f)
    long projection_warnings = 0;
    double initial_mass = 0.0;
    double max_equilibrium_drift = 0.0; ///< max relative change of (rho, v, T) against the initial moments
};

/// Observer called after every recorded row.
using RunObserver = std::function<void(const DiagnosticsRecord&, long step)>;

/// Integrates from `initial` to t_end. Throws NumericalAbort.
RunResult run(Solver& solver, Distribution initial, const RunSettings& settings, const RunObserver& observer = {});

/// Diagnostics of a single state.
DiagnosticsRecord record_state(Solver& solver, const Distribution& f, double t, const HcContext& hc);
Snapshot snapshot_state(const Solver& solver, const Distribution& f, double t);

}  // namespace enskog
