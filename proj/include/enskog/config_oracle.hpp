#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "enskog/phase_grid.hpp"

namespace enskog {

/// Monte Carlo estimate with its standard error and provenance.
struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;

    nlohmann::json to_json(const nlohmann::json& inputs) const;
};

/// Box holding the N hard spheres. x spans the slab; y and z are either
/// bounded by walls or periodic (minimum image).
struct OracleBox {
    double lx = 1.0;
    double ly = 1.0;
    double lz = 1.0;
    bool periodic_transverse = true;

    double volume() const { return lx * ly * lz; }
};

/// Raised when g2 is requested where the density vanishes.
class UndefinedCorrelation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Weight function w and everything derived from it by the oracle.
///
/// w depends on x only, is piecewise linear through the cell values w_x and
/// normalised so that the integral of w over the box is 1.
struct ConfigState {
    std::vector<double> w_x;      ///< per-cell values of the x profile, sum(w_x) dx = 1
    std::vector<McEstimate> y;    ///< Y at the cell centres (box mid-plane)
    McEstimate phi;               ///< slab quadrature of w Y, so that rho integrates to m N
    std::vector<double> rho;      ///< m N w Y / phi at the cell centres [kg/m^3]
    int iterations = 0;
    double residual = 0.0;        ///< max relative density mismatch at exit
};

struct ReductionCheck {
    double lhs = 0.0;
    double lhs_std_error = 0.0;
    double rhs = 0.0;
    double rhs_std_error = 0.0;
    double combined_std_error() const;
    nlohmann::json to_json() const;
};

/// Configuration-integral oracle for N hard spheres of diameter sigma in a
/// box. Integrals over w^k dX are estimated with uniform proposals in the box
/// (x coordinates stratified) so that a fixed seed gives a smooth function of
/// w.
class ConfigOracle {
public:
    ConfigOracle(OracleBox box, SpatialGrid grid, int particles, double sigma, double mass,
                 std::size_t samples, std::uint64_t seed);

    int particles() const { return n_; }
    double sigma() const { return sigma_; }
    double mass() const { return mass_; }
    const OracleBox& box() const { return box_; }
    const SpatialGrid& grid() const { return grid_; }
    std::size_t samples() const { return samples_; }
    std::uint64_t seed() const { return seed_; }

    /// w(X) in the box for the x profile w_x.
    double weight(std::span<const double> w_x, const Vec3& x) const;

    /// Y(X1): integral over the other N-1 positions of w...w Theta.
    McEstimate config_Y(std::span<const double> w_x, const Vec3& x1) const;
    /// phi: integral over all N positions of w...w Theta.
    McEstimate config_phi(std::span<const double> w_x) const;
    /// Integral over positions 3..N of w...w Theta_(1,2). Equal to 1 for N = 2.
    McEstimate config_pair_excluded(std::span<const double> w_x, const Vec3& x1, const Vec3& x2) const;

    /// Forward map w -> (Y, phi, rho) at the cell centres. Needs a
    /// transversely periodic box so that Y depends on x only.
    ConfigState state_from_w(std::vector<double> w_x) const;
    /// Fixed-point inversion rho -> w. rho is the 3D mass density per cell.
    ConfigState invert_density_to_w(std::span<const double> rho, double tol, int max_iterations = 200) const;

    /// g2(X1, X2) = m^2 N (N-1)/phi * w1 w2/(rho1 rho2) * integral of Theta_(1,2).
    McEstimate exact_g2(const ConfigState& state, const Vec3& x1, const Vec3& x2) const;
    /// Point density rho(X) = m N w Y / phi.
    double density_at(const ConfigState& state, const Vec3& x, double* std_error = nullptr) const;

    /// Both sides of (1/m) int rho1 rho2 g2 d/dx1 theta(|X12| - sigma) dX2 = rho d/dx1 ln(rho/w),
    /// x components, at X1. The left side uses a sphere rule of the given
    /// order, the right side a fourth-order central difference of Y with steps h, 2h.
    ReductionCheck verify_reduction_identity(const ConfigState& state, const Vec3& x1, int sphere_order,
                                             double h) const;

    /// Pair separation honouring the transverse boundary condition.
    double distance2(const Vec3& a, const Vec3& b) const;
    /// True when the point lies inside the box.
    bool contains(const Vec3& x) const;

private:
    struct SampleSet {
        int per_sample = 0;
        std::vector<Vec3> points;  // samples_ * per_sample
    };
    std::shared_ptr<const SampleSet> samples_for(int per_sample, std::uint64_t stream) const;
    SampleSet make_samples(int per_sample, std::uint64_t stream) const;

    OracleBox box_;
    SpatialGrid grid_;
    int n_;
    double sigma_;
    double mass_;
    std::size_t samples_;
    std::uint64_t seed_;
    mutable std::mutex cache_mutex_;
    mutable std::vector<std::pair<std::uint64_t, std::shared_ptr<SampleSet>>> sample_cache_;
};

/// splitmix64 mixing, used to derive independent streams from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace enskog
