#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "enskog/vec3.hpp"

namespace enskog {

/// Uniform cell-centred grid on the slab [0, L].
class SpatialGrid {
public:
    SpatialGrid(double length, int cells);

    double length() const { return length_; }
    int cells() const { return cells_; }
    double dx() const { return dx_; }
    double center(int k) const { return (k + 0.5) * dx_; }

private:
    double length_;
    int cells_;
    double dx_;
};

/// Cartesian midpoint grid on the cube [-xi_max, xi_max]^3.
///
/// Nodes are ordered with the x index slowest so that the x-reflection of a
/// node is a cheap index operation. All nodes share the weight (2 xi_max/N)^3.
class VelocityGrid {
public:
    VelocityGrid(double xi_max, int points_per_axis);

    double xi_max() const { return xi_max_; }
    int per_axis() const { return n_; }
    int size() const { return n_ * n_ * n_; }
    double spacing() const { return h_; }
    double weight() const { return h_ * h_ * h_; }

    double axis_value(int i) const { return -xi_max_ + (i + 0.5) * h_; }
    int index(int i, int j, int l) const { return (i * n_ + j) * n_ + l; }
    std::array<int, 3> indices(int node) const {
        return {node / (n_ * n_), (node / n_) % n_, node % n_};
    }
    const Vec3& node(int n) const { return nodes_[static_cast<std::size_t>(n)]; }
    std::span<const Vec3> nodes() const { return nodes_; }

    /// Node obtained by flipping the x component.
    int mirror_x(int node) const;
    /// Node obtained by flipping every component.
    int negate(int node) const { return size() - 1 - node; }

private:
    double xi_max_;
    int n_;
    double h_;
    std::vector<Vec3> nodes_;
};

/// Product quadrature on the unit sphere with the polar axis along x.
///
/// Gauss-Legendre in alpha_x on each hemisphere separately (order/2 nodes
/// per hemisphere) times 2*order equispaced azimuths. The node set is closed
/// under alpha -> -alpha and hemispheres never share a node.
class SphereQuadrature {
public:
    explicit SphereQuadrature(int order);

    int order() const { return order_; }
    int size() const { return static_cast<int>(nodes_.size()); }
    const Vec3& node(int q) const { return nodes_[static_cast<std::size_t>(q)]; }
    double weight(int q) const { return weights_[static_cast<std::size_t>(q)]; }
    int antipode(int q) const { return antipode_[static_cast<std::size_t>(q)]; }

private:
    int order_;
    std::vector<Vec3> nodes_;
    std::vector<double> weights_;
    std::vector<int> antipode_;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Linear interpolation stencil for a point on the slab.
///
/// Points in [0, x_0) and (x_{N-1}, L] take the value of the nearest cell.
/// Points outside [0, L] are flagged as outside and evaluate to zero.
struct ShiftStencil {
    int lo = 0;
    int hi = 0;
    double w_lo = 0.0;
    double w_hi = 0.0;
    bool inside = false;

    double apply(std::span<const double> values) const {
        if (!inside) return 0.0;
        return w_lo * values[static_cast<std::size_t>(lo)] + w_hi * values[static_cast<std::size_t>(hi)];
    }
};

ShiftStencil make_stencil(const SpatialGrid& grid, double x);

/// Value of a cell-centred field at x + s, zero outside the slab.
double shifted_value(const SpatialGrid& grid, std::span<const double> field, double x, double s);

}  // namespace enskog
