#pragma once

#include <memory>
#include <span>
#include <vector>

#include "enskog/phase_grid.hpp"

namespace enskog {

/// Molecular constants. SI units throughout.
struct GasProperties {
    double sigma = 1.0;          ///< hard-sphere diameter [m]
    double mass = 1.0;           ///< molecular mass [kg]
    double gas_constant = 1.0;   ///< specific gas constant R [J/(kg K)]
};

struct PhaseSpace {
    PhaseSpace(SpatialGrid x, VelocityGrid v) : space(x), velocity(std::move(v)) {}
    SpatialGrid space;
    VelocityGrid velocity;
};

using PhaseSpacePtr = std::shared_ptr<const PhaseSpace>;

/// Mass density in phase space, f(x_k, xi_n), stored cell-major.
class Distribution {
public:
    explicit Distribution(PhaseSpacePtr ps);

    const PhaseSpace& phase_space() const { return *ps_; }
    const PhaseSpacePtr& phase_space_ptr() const { return ps_; }
    int cells() const { return ps_->space.cells(); }
    int nodes() const { return ps_->velocity.size(); }

    double& at(int k, int n) { return data_[index(k, n)]; }
    double at(int k, int n) const { return data_[index(k, n)]; }
    std::span<double> cell(int k) { return {data_.data() + index(k, 0), static_cast<std::size_t>(nodes())}; }
    std::span<const double> cell(int k) const {
        return {data_.data() + index(k, 0), static_cast<std::size_t>(nodes())};
    }
    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    /// Sum over all cells and nodes of f * dx * w.
    double total_mass() const;
    /// Density per cell.
    std::vector<double> density() const;
    bool all_finite() const;

private:
    std::size_t index(int k, int n) const {
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(nodes()) + static_cast<std::size_t>(n);
    }
    PhaseSpacePtr ps_;
    std::vector<double> data_;
};

/// Continuous Maxwellian with density rho, drift u and temperature T.
double maxwellian(double rho, const Vec3& u, double temperature, double gas_constant, const Vec3& xi);

/// Wall Maxwellian with unit density evaluated on the nodes.
std::vector<double> unit_maxwellian_nodes(const VelocityGrid& grid, double temperature, double gas_constant);

/// Maxwellian with given moments in each cell. Density is rescaled so that
/// the discrete mass per cell equals rho[k].
Distribution make_local_maxwellian(const PhaseSpacePtr& ps, std::span<const double> rho, std::span<const double> u_x,
                                   std::span<const double> temperature, double gas_constant);

}  // namespace enskog
