#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "enskog/distribution.hpp"

namespace enskog {

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    nlohmann::json details = nlohmann::json::object();
};

struct Report {
    std::string suite;
    std::vector<Check> checks;

    bool pass() const;
    nlohmann::json to_json() const;
    /// value <= tolerance
    Check& expect_le(std::string name, double value, double tolerance, nlohmann::json details = nlohmann::json::object());
};

const std::vector<std::string>& verify_suites();
/// Runs one suite. `resolution` >= 1 refines grids and sample counts.
Report run_verify(const std::string& suite, int resolution = 1);

Report verify_identities(int resolution);
Report verify_boundary(int resolution);
Report verify_correlation(int resolution);
Report verify_fluxes(int resolution);

/// Smooth positive test state: a density wave times a unit Maxwellian with
/// a bounded polynomial velocity modulation. The same seed gives the same
/// continuous function on every grid.
Distribution random_smooth_state(const PhaseSpacePtr& ps, std::uint64_t seed, double temperature, double gas_constant);

/// Per-refinement residuals of the identities used by the acceptance suite.
struct IdentityResiduals {
    int velocity_points = 0;
    int sphere_order = 0;
    double exchange = 0.0;        ///< int phi J^G vs int phi' J^L, relative
    double energy_forms = 0.0;    ///< surface energy form vs direct moment, relative
    double momentum_forms = 0.0;  ///< surface momentum form vs direct moment, relative
};
IdentityResiduals identity_residuals(int velocity_points, int sphere_order, std::uint64_t seed);

struct DomainMomentPoint {
    int sphere_order = 0;
    double momentum = 0.0;  ///< |sum dx int xi_x J|
    double energy = 0.0;    ///< |sum dx int xi^2/2 J|
    double wall_stress = 0.0;
    double wall_heat = 0.0;
};
/// Domain-integrated moments of the full-quadrature J on a random smooth state.
DomainMomentPoint domain_moment_point(int sphere_order, std::uint64_t seed, int velocity_points = 6, int cells = 8,
                         double sigma = 0.05);

}  // namespace enskog
