#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "enskog/config_oracle.hpp"
#include "enskog/distribution.hpp"

namespace enskog {

enum class CorrelationKind { Unity, ContactCS, ConfigOracle };

/// Parameters of the configuration-integral oracle when it is used as the
/// pair correlation of the slab.
struct OracleSettings {
    int particles = 3;
    std::size_t samples = 20000;
    std::uint64_t seed = 1;
    double transverse_extent = 1.0;  ///< side of the square cross section [m]
    double tolerance = 1e-3;         ///< density inversion tolerance
};

struct CorrelationModel {
    CorrelationKind kind = CorrelationKind::Unity;
    OracleSettings oracle{};
};

/// Largest packing fraction accepted by the Carnahan-Starling closure.
inline constexpr double kMaxPackingFraction = 0.64;

double packing_fraction(double rho, double sigma, double mass);
/// Contact value (1 - eta/2) / (1 - eta)^3. Throws DomainError outside [0, 0.64).
double cs_contact_value(double eta);
/// Excess free energy per unit mass over RT: eta (4 - 3 eta) / (1 - eta)^2.
double cs_excess_free_energy(double eta);

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Pair correlation g(X, Y) for a fixed density profile on the slab.
///
/// Values are symmetric in the two arguments and vanish when either point
/// lies outside [0, L].
class PairCorrelation {
public:
    PairCorrelation(const CorrelationModel& model, const SpatialGrid& grid, std::vector<double> rho,
                    const GasProperties& gas);

    double operator()(double x, double y) const;
    CorrelationKind kind() const { return model_.kind; }
    const std::vector<double>& density() const { return rho_; }
    /// Oracle state behind the ConfigOracle closure, null otherwise.
    const ConfigState* oracle_state() const { return state_.get(); }

private:
    CorrelationModel model_;
    SpatialGrid grid_;
    std::vector<double> rho_;
    GasProperties gas_;
    std::unique_ptr<ConfigOracle> oracle_;
    std::unique_ptr<ConfigState> state_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<long long, long long>, double> cache_;
};

/// One-shot evaluation of g(x, y) for the density profile rho.
double eval_g(const CorrelationModel& model, const SpatialGrid& grid, std::span<const double> rho,
              const GasProperties& gas, double x, double y);

}  // namespace enskog
