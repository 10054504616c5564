#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "enskog/collision.hpp"
#include "enskog/correlation.hpp"
#include "enskog/distribution.hpp"
#include "enskog/vlasov.hpp"

namespace enskog {

struct CellMoments {
    double rho = 0.0;
    Vec3 v;
    double temperature = 0.0;
};

/// Density, drift and temperature of one velocity distribution. Vacuum gives
/// v = 0 and T = T_w.
CellMoments velocity_moments(const VelocityGrid& grid, std::span<const double> f, double wall_temperature,
                             double gas_constant);

struct MomentSet {
    std::vector<double> rho;
    std::vector<Vec3> v;
    std::vector<double> temperature;
};

MomentSet moments(const Distribution& f, double wall_temperature, double gas_constant);

/// Collisional stress and heat flux at arbitrary slab positions.
struct CollisionalFluxes {
    std::vector<double> x;
    /// xx, yy, zz, xy, xz, yz
    std::vector<std::array<double, 6>> p;
    std::vector<Vec3> q;
};

/// Evaluates the lambda integrals with a midpoint rule over [0, sigma]. f and
/// g at shifted positions are clipped to the slab, so both fields vanish on
/// the walls.
CollisionalFluxes collisional_fluxes(const Distribution& f, const PairCorrelation& g, const ProjectedSphere& sphere,
                                     const GasProperties& gas, std::span<const double> x, double wall_temperature,
                                     int lambda_points = 8);

/// Positions of the cell centres and both wall faces.
std::vector<double> flux_positions(const SpatialGrid& grid);

struct DomainMomentResiduals {
    Vec3 momentum;           ///< sum over cells dx int xi J
    double energy = 0.0;     ///< sum over cells dx int xi^2/2 J
    double wall_stress = 0.0;  ///< max |p^(c)| on the two wall faces
    double wall_heat = 0.0;    ///< max |q^(c)| on the two wall faces
};

DomainMomentResiduals domain_moment_residuals(const CollisionOperator& op, std::span<const double> j);
DomainMomentResiduals domain_moment_residuals(const CollisionOperator& op, std::span<const double> j, const Distribution& f,
                                 const PairCorrelation& g, double wall_temperature);

/// int int f ln f with the reference phase density 1 in the units of f; 0 ln 0 = 0.
double h_kinetic(const Distribution& f);

/// Closed forms used for the collisional part of the H function.
enum class HcMode {
    IdealClosedForm,  ///< Theta = 1: -M ln M
    ConfigOracle,     ///< -int rho ln(rho/w) - m ln phi from the density inversion
    CSSurrogate,      ///< int rho psi_CS(eta); not the configurational H^(c)
    UnityVirial,      ///< ideal part plus (1/2m) int int rho rho theta(sigma - |X - Y|)
};

std::string to_string(HcMode mode);
HcMode hc_mode_from_string(const std::string& name);
std::string to_string(CorrelationKind kind);
CorrelationKind correlation_kind_from_string(const std::string& name);

/// True for the correlation / H^(c) pairs for which the free energy decreases.
bool consistent_pairing(CorrelationKind kind, HcMode mode);

/// All extensive quantities are per unit transverse area. `transverse_area`
/// is the cross section A of the box the particles live in; the ideal part
/// is -M ln(M A) with M the mass per unit area.
struct HcContext {
    HcMode mode = HcMode::IdealClosedForm;
    GasProperties gas;
    double transverse_area = 1.0;
};

/// `state` must come from the density inversion when mode is ConfigOracle.
double h_collisional(const HcContext& ctx, const SpatialGrid& grid, std::span<const double> rho,
                     const ConfigState* state = nullptr);

struct FreeEnergy {
    double h_kinetic = 0.0;
    double h_collisional = 0.0;
    double relative_entropy = 0.0;  ///< sum dx int f ln(f/f_w), f_w of unit density
    double free_energy = 0.0;       ///< F
    double potential = 0.0;         ///< (1/2) int int Phi rho rho
    double free_energy_prime = 0.0; ///< F + potential
    double magnitude = 0.0;         ///< sum of the absolute values of the terms of F'
    double kinetic_energy = 0.0;    ///< int int xi^2/2 f
    double mass = 0.0;
};

/// Throws std::invalid_argument for inconsistent pairings.
FreeEnergy free_energy(const Distribution& f, CorrelationKind kind, const HcContext& ctx, double wall_temperature,
                       const VlasovField* vlasov = nullptr, const ConfigState* state = nullptr);

/// Checks F(t_{i+1}) <= F(t_i) + eps over a recorded series, with
/// eps = 1e-3 |F(t_0) - F(t_end)| / intervals plus a round-off floor of
/// 64 machine epsilons of the largest recorded magnitude. The magnitude is
/// the size of the terms F is summed from, which can exceed |F| by orders.
class MonotonicityMonitor {
public:
    explicit MonotonicityMonitor(std::string name) : name_(std::move(name)) {}

    void record(double t, double value, double magnitude = 0.0);
    struct Violation {
        double t = 0.0;
        double increase = 0.0;
    };
    struct Verdict {
        bool pass = true;
        double tolerance = 0.0;
        double largest_increase = 0.0;
        std::vector<Violation> violations;
        nlohmann::json to_json() const;
    };
    Verdict verdict() const;
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& times() const { return times_; }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::vector<double> times_;
    std::vector<double> values_;
    double magnitude_ = 0.0;
};

}  // namespace enskog
