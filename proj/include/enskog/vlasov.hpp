#pragma once

#include <functional>
#include <span>
#include <vector>

#include "enskog/distribution.hpp"

namespace enskog {

struct VlasovSettings {
    bool enabled = false;
    double epsilon = 0.0;      ///< well depth [J]
    double gamma = 6.0;        ///< tail exponent, > 2 for a finite slab kernel
    double core_radius = 0.0;  ///< Phi is flat inside [m]

    friend bool operator==(const VlasovSettings&, const VlasovSettings&) = default;
};

/// Integral over two cells of K(x - y), K even, for every cell pair.
/// `kinks` lists |s| where K or K' is not smooth; quadrature is split there.
std::vector<double> cell_pair_matrix(const SpatialGrid& grid, const std::function<double(double)>& kernel,
                                     std::span<const double> kinks, int points = 8);

/// Mean-field attraction Phi(r) = -(eps/m^2)(r_c/r)^gamma for r > r_c and
/// -eps/m^2 inside, reduced to the slab.
class VlasovField {
public:
    VlasovField(const SpatialGrid& grid, VlasovSettings settings, double mass);

    const VlasovSettings& settings() const { return settings_; }
    double core_radius() const { return rc_; }
    /// Pair potential per unit mass squared [J/kg^2].
    double phi(double r) const;
    /// K(s) = 2 pi int_{|s|}^inf Phi(r) r dr.
    double slab_kernel(double s) const;
    /// Lower bound of Phi, which makes F' bounded below.
    double phi_min() const { return -settings_.epsilon / (mass_ * mass_); }

    /// F_x at the cell centres for a piecewise constant density.
    std::vector<double> force(std::span<const double> rho) const;
    /// (1/2) int int K(x - y) rho rho dx dy with the exact cell-pair integrals.
    double potential_energy(std::span<const double> rho) const;
    /// Smallest entry of the cell-pair matrix.
    double min_pair_integral() const;

    /// One explicit step of df/dt + F df/dxi_x = 0. The flux on each xi_x
    /// line is F M_{j+1/2} g_up with g = f/f_w and M the discrete face
    /// values of the wall Maxwellian, which keeps mass exactly and makes the
    /// discrete <ln(f/f_w) F df/dxi> equal -rho v F/RT_w up to an upwind
    /// dissipation term.
    void transport(Distribution& f, std::span<const double> force, double dt, double wall_temperature,
                   double gas_constant) const;
    /// Largest dt |F| M_{j+1/2}/(dxi f_w,j) allowed by positivity for unit force.
    double transport_rate(double wall_temperature, double gas_constant, const VelocityGrid& grid) const;

private:
    SpatialGrid grid_;
    VlasovSettings settings_;
    double mass_;
    double rc_;
    std::vector<double> pair_;  // cells x cells
    std::vector<double> face_kernel_;  // K((d + 1/2) dx) for d = -cells .. cells
};

}  // namespace enskog
