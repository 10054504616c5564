#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "enskog/correlation.hpp"
#include "enskog/distribution.hpp"
#include "enskog/projection.hpp"

namespace enskog {

enum class CollisionMode { FullQuadrature, SeededMC };

struct CollisionSettings {
    CollisionMode mode = CollisionMode::SeededMC;
    int sphere_order = 8;           ///< FullQuadrature and surface forms
    std::size_t samples = 32;       ///< SeededMC draws per velocity node
    std::uint64_t seed = 1;
    double reference_temperature = 1.0;  ///< wall temperature; shape of the mass projection
    double proposal_temperature = 0.0;   ///< SeededMC partner proposal, defaults to reference_temperature
};

/// Collision invariant used in moment_of_J.
enum class Moment { Mass, MomentumX, MomentumY, MomentumZ, Energy };

double moment_weight(Moment psi, const Vec3& xi);

struct CollisionResult {
    std::vector<double> j;           ///< J per (cell, node), after the mass projection
    std::vector<double> frequency;   ///< loss / f per (cell, node)
    std::vector<double> mass_defect; ///< per-cell mass moment removed by the projection
    double max_frequency = 0.0;
    double max_abs_j = 0.0;
    double max_projection = 0.0;     ///< largest |shift| added by the projection
    bool projection_warning = false; ///< shift exceeded 1% of max |J|
};

/// Modified Enskog collision operator on a slab.
///
/// Post-collision values f(x_c, xi') are taken off the grid as
/// M_c(xi') * I[f/M_c](xi'), with M_c the unit-density Maxwellian carrying
/// the drift and temperature of cell c and I trilinear in velocity (constant
/// beyond the last node). Spatial shifts interpolate linearly between cells.
/// A cellwise Maxwellian is therefore reproduced exactly, and for a uniform
/// Maxwellian gain equals loss at every node.
class CollisionOperator {
public:
    CollisionOperator(PhaseSpacePtr ps, GasProperties gas, CorrelationModel model, CollisionSettings settings);

    const CollisionSettings& settings() const { return settings_; }
    const GasProperties& gas() const { return gas_; }
    const PhaseSpace& phase_space() const { return *ps_; }
    const CorrelationModel& model() const { return model_; }
    const std::vector<double>& reference() const { return fref_; }
    const ProjectedSphere& projected() const { return *projected_; }

    /// Pair correlation for the current density of f.
    PairCorrelation correlation_for(const Distribution& f) const;

    /// Gain and loss terms at a single (cell, node).
    double gain(const Distribution& f, const PairCorrelation& g, int k, int n) const;
    double loss(const Distribution& f, const PairCorrelation& g, int k, int n) const;

    /// J = gain - loss on the whole grid followed by the per-cell mass projection.
    CollisionResult apply(const Distribution& f) const;
    /// Same without the projection; gain and loss are returned separately.
    void gain_loss(const Distribution& f, const PairCorrelation& g, std::vector<double>& gain_out,
                   std::vector<double>& loss_out) const;

    /// Per-cell loss term weighted by a function of the post-collision
    /// velocity xi' = xi + V alpha, i.e. the right side of int phi J^G = int phi' J^L.
    std::vector<double> loss_post_moment(const Distribution& f, const PairCorrelation& g,
                                         double (*phi)(const Vec3&)) const;

    /// Per-cell moment of J.
    std::vector<double> moment_of_J(std::span<const double> j, Moment psi) const;
    /// Momentum moment of J written as a pair integral without post-collision
    /// velocities: -(sigma^2/m) int alpha_i V^2 theta(V) g(X+sigma alpha, X) f(X+sigma alpha) f*(X).
    std::vector<double> surface_momentum(const Distribution& f, const PairCorrelation& g, int component) const;
    /// Energy moment of J in the same form: -(sigma^2/2m) int [(xi+xi*).alpha] V^2 theta(V) g f(X+sigma alpha) f*(X).
    std::vector<double> surface_energy(const Distribution& f, const PairCorrelation& g) const;

private:
    struct Event {
        int partner = 0;       ///< xi* node
        Vec3 alpha;
        double v = 0.0;        ///< (xi* - xi) . alpha, positive
        double coef = 0.0;     ///< (sigma^2/m) x quadrature weight x V
        Vec3 xp;               ///< xi'
        Vec3 xs;               ///< xi*'
        int base_p = 0;        ///< trilinear base of xi'
        double tp[3]{};
        int base_s = 0;        ///< trilinear base of xi*'
        double ts[3]{};
    };

    void build_events(int n, std::vector<Event>& out) const;
    void fill_stencil(const Vec3& v, int& base, double t[3]) const;
    double interp(std::span<const double> ratio_cell, int base, const double t[3]) const;
    struct LocalReference {
        double norm = 0.0;   ///< (2 pi R T)^(-3/2)
        double a = 0.0;      ///< 1 / (2 R T)
        Vec3 v;
        double operator()(const Vec3& xi) const { return norm * std::exp(-a * norm2(xi - v)); }
    };
    struct Workspace {
        std::vector<LocalReference> refs;
        std::vector<double> ratio;
    };
    Workspace prepare(const Distribution& f) const;
    void node_terms(const std::vector<Event>& events, const Workspace& ws, const Distribution& f,
                    const PairCorrelation& g, int k, double& gain_out, double& rate_out) const;

    PhaseSpacePtr ps_;
    GasProperties gas_;
    CorrelationModel model_;
    CollisionSettings settings_;
    SphereQuadrature sphere_;
    std::unique_ptr<ProjectedSphere> projected_;
    std::vector<double> fref_;
    double grid_temperature_bias_ = 1.0;  // discrete temperature of fref_ over the reference temperature
    std::vector<std::vector<Event>> mc_events_;  // frozen SeededMC draws per node
};

}  // namespace enskog
