#pragma once

#include <span>
#include <vector>

#include "enskog/phase_grid.hpp"

namespace enskog {

/// Velocity nodes sorted by their projection u = xi . alpha for every sphere
/// node. Double sums over (xi, xi*) of polynomials in u, u* restricted to
/// u* > u then cost O(N) per direction instead of O(N^2).
class ProjectedSphere {
public:
    ProjectedSphere(const VelocityGrid& vgrid, const SphereQuadrature& sphere);

    struct PairSums {
        double quadratic = 0.0;  ///< sum fa fb (u* - u)^2
        double cubic = 0.0;      ///< sum fa fb (u + u*) (u* - u)^2
    };

    /// Sums over node pairs with u* > u of fa(xi) fb(xi*) times the two kernels.
    PairSums pair_sums(int q, std::span<const double> fa, std::span<const double> fb) const;

    const SphereQuadrature& sphere() const { return sphere_; }

private:
    SphereQuadrature sphere_;
    int nodes_;
    std::vector<int> order_;     // per direction, nodes sorted by u
    std::vector<double> u_;      // matching sorted projections
};

}  // namespace enskog
