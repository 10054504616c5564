#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "enskog/boundary.hpp"
#include "enskog/collision.hpp"
#include "enskog/correlation.hpp"
#include "enskog/diagnostics.hpp"
#include "enskog/dynamics.hpp"
#include "enskog/vlasov.hpp"

namespace enskog {

struct GeometryConfig {
    double length = 1.0;
    int cells = 16;
    friend bool operator==(const GeometryConfig&, const GeometryConfig&) = default;
};

struct VelocityConfig {
    double xi_max = 6.2;
    int points = 16;
    friend bool operator==(const VelocityConfig&, const VelocityConfig&) = default;
};

struct PhysicsConfig {
    double sigma = 0.02;
    double mass = 1.0;
    double gas_constant = 1.0;
    double wall_temperature = 1.0;
    double density = 2250.0;        ///< mean mass density [kg/m^3]
    double transverse_area = 1.0;   ///< cross section of the particle box [m^2]
    friend bool operator==(const PhysicsConfig&, const PhysicsConfig&) = default;
};

struct InitialConfig {
    double temperature = 1.5;
    double velocity = 0.0;
    std::string profile = "uniform";  ///< uniform | cosine
    double amplitude = 0.0;           ///< relative density modulation of the cosine profile
    friend bool operator==(const InitialConfig&, const InitialConfig&) = default;
};

struct CorrelationConfig {
    CorrelationKind model = CorrelationKind::Unity;
    HcMode h_collisional = HcMode::IdealClosedForm;
    int particles = 3;
    std::size_t samples = 20000;
    std::uint64_t seed = 1;
    double tolerance = 1e-3;
    friend bool operator==(const CorrelationConfig&, const CorrelationConfig&) = default;
};

struct IntegratorConfig {
    double dt = 0.004;
    double t_end = 4.0;
    double cfl = 0.9;
    CollisionMode collision_mode = CollisionMode::SeededMC;
    std::size_t samples = 16;
    std::uint64_t seed = 7;
    int sphere_order = 8;
    double collision_stability = 0.5;
    friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

struct OutputConfig {
    std::string directory = "run";
    int every = 25;
    int snapshot_every = 250;
    std::vector<std::string> formats{"csv", "json", "gnuplot"};
    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct SimulationConfig {
    GeometryConfig geometry;
    VelocityConfig velocity;
    PhysicsConfig physics;
    InitialConfig initial;
    CorrelationConfig correlation;
    WallSpec left;
    WallSpec right;
    VlasovSettings vlasov;
    IntegratorConfig integrator;
    OutputConfig output;

    friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// Every violation found while reading or validating a configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Parses TOML text. Overrides are `section.key=value` with a TOML value;
/// bare words are taken as strings. Throws ConfigError listing every problem.
SimulationConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides = {});
SimulationConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {});
/// Applies overrides to an existing configuration and revalidates it.
SimulationConfig apply_overrides(const SimulationConfig& base, const std::vector<std::string>& overrides);

/// Range and consistency checks; returns the list of violations.
std::vector<std::string> validate(const SimulationConfig& config);

/// TOML text that parses back to the same configuration.
std::string serialize(const SimulationConfig& config);
/// FNV-1a hash of the serialized configuration, as hex.
std::string config_hash(const SimulationConfig& config);

std::string to_string(WallKernelKind kind);
std::string to_string(CollisionMode mode);

/// Objects built from a validated configuration.
SolverSetup make_solver_setup(const SimulationConfig& config);
RunSettings make_run_settings(const SimulationConfig& config);
Distribution make_initial_state(const SimulationConfig& config, const PhaseSpacePtr& ps);

}  // namespace enskog
