#pragma once

#include <span>
#include <vector>

#include "enskog/phase_grid.hpp"

namespace enskog {

enum class WallKernelKind { Diffuse, Maxwell, CercignaniLampis };

struct WallSpec {
    WallKernelKind kind = WallKernelKind::Diffuse;
    double accommodation = 1.0;  ///< Maxwell: diffuse fraction a in (0, 1]
    double alpha_n = 1.0;        ///< CL normal energy accommodation in (0, 1]
    double alpha_t = 1.0;        ///< CL tangential momentum accommodation in (0, 2)

    friend bool operator==(const WallSpec&, const WallSpec&) = default;
};

/// Throws std::invalid_argument for parameters outside the admissible ranges.
void validate(const WallSpec& spec);

enum class WallSide { Left, Right };

/// Discrete scattering kernel of one wall of the slab.
///
/// The kernel is stored as a reflection probability P(e|i) from impinging
/// node i (xi . n < 0, n the inward normal) to emitted node e (xi . n > 0):
/// |xi_e . n| f(e) w = sum_i P(e|i) |xi_i . n| f(i) w. Every column of P sums
/// to 1 and the wall Maxwellian is mapped onto itself.
class WallKernel {
public:
    WallKernel(const VelocityGrid& grid, WallSpec spec, double wall_temperature, double gas_constant, WallSide side);

    const WallSpec& spec() const { return spec_; }
    WallSide side() const { return side_; }
    double wall_temperature() const { return t_w_; }
    /// Inward normal component of a node velocity.
    double normal_velocity(int node) const;
    const std::vector<int>& impinging() const { return impinging_; }
    const std::vector<int>& emitted() const { return emitted_; }

    /// Reads the impinging entries of `wall` and overwrites its emitted
    /// entries with the reflected distribution. Rejects negative input.
    void reflect(std::span<double> wall) const;
    /// Reflection of an impinging half-space given as a full-range array.
    std::vector<double> reflect_copy(std::span<const double> wall) const;

    /// Discrete P(e|i) for individual nodes.
    double reflection_probability(int emitted_node, int impinging_node) const;
    /// max over impinging nodes of |sum_e P(e|i) - 1|.
    double normalization_error() const;
    /// max relative deviation from f_w on emitted nodes after reflecting f_w.
    double equilibrium_error() const;

private:
    int half_index(int axis_index) const;  // normal speed index 0..N/2-1

    const VelocityGrid& grid_;
    WallSpec spec_;
    double t_w_;
    double r_;
    WallSide side_;
    std::vector<int> impinging_;
    std::vector<int> emitted_;
    std::vector<double> fw_;               // unit wall Maxwellian on the nodes
    std::vector<double> diffuse_profile_;  // P(e|.) of the diffuse kernel, per emitted node
    std::vector<double> pn_;               // CL normal factor, (N/2) x (N/2), [e][i]
    std::vector<double> pt_;               // CL tangential factor, N x N, [e][i]
};

/// Sum over nodes of w (xi . n) f ln(f/f_w), n the inward normal, f_w the
/// unit-density wall Maxwellian; 0 ln 0 = 0. Rejects negative f.
double dg_boundary_flux(const VelocityGrid& grid, std::span<const double> wall, double wall_temperature,
                        double gas_constant, WallSide side);

/// Balances a positive matrix k (row-major n x n, k[e][i]) so that both its
/// row and column sums equal `marginal`, by alternating scaling.
void sinkhorn_balance(std::vector<double>& k, std::span<const double> marginal, int n, double tol = 1e-14,
                      int max_iterations = 100000);

}  // namespace enskog
