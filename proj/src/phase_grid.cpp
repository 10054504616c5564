#include "enskog/phase_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace enskog {

SpatialGrid::SpatialGrid(double length, int cells) : length_(length), cells_(cells) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("slab length must be positive and finite");
    if (cells < 1) throw std::invalid_argument("slab needs at least one cell");
    dx_ = length / cells;
}

VelocityGrid::VelocityGrid(double xi_max, int points_per_axis) : xi_max_(xi_max), n_(points_per_axis) {
    if (!(xi_max > 0.0) || !std::isfinite(xi_max))
        throw std::invalid_argument("velocity cut-off must be positive and finite");
    if (points_per_axis < 4)
        throw std::invalid_argument("velocity grid needs at least 4 points per axis, got " +
                                    std::to_string(points_per_axis));
    if (points_per_axis % 2 != 0)
        throw std::invalid_argument("velocity grid points per axis must be even (got " +
                                    std::to_string(points_per_axis) + ")");
    h_ = 2.0 * xi_max / n_;
    nodes_.resize(static_cast<std::size_t>(size()));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int l = 0; l < n_; ++l)
                nodes_[static_cast<std::size_t>(index(i, j, l))] = {axis_value(i), axis_value(j), axis_value(l)};
}

int VelocityGrid::mirror_x(int node) const {
    const auto [i, j, l] = indices(node);
    return index(n_ - 1 - i, j, l);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = x; p0 = 1.0; }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

SphereQuadrature::SphereQuadrature(int order) : order_(order) {
    if (order < 2) throw std::invalid_argument("sphere quadrature order must be at least 2");
    if (order % 2 != 0)
        throw std::invalid_argument("sphere quadrature order must be even (got " + std::to_string(order) + ")");

    const int n_mu = order / 2;
    const int n_phi = 2 * order;
    std::vector<double> gx;
    std::vector<double> gw;
    gauss_legendre(n_mu, gx, gw);

    // Hemisphere alpha_x in (0, 1]: map [-1, 1] -> [0, 1].
    std::vector<double> mu;
    std::vector<double> wmu;
    for (int i = 0; i < n_mu; ++i) {
        mu.push_back(-(0.5 * (gx[static_cast<std::size_t>(i)] + 1.0)));
        wmu.push_back(0.5 * gw[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n_mu; ++i) {
        mu.push_back(0.5 * (gx[static_cast<std::size_t>(i)] + 1.0));
        wmu.push_back(0.5 * gw[static_cast<std::size_t>(i)]);
    }

    const double dphi = 2.0 * kPi / n_phi;
    const int n_total = 2 * n_mu * n_phi;
    nodes_.reserve(static_cast<std::size_t>(n_total));
    weights_.reserve(static_cast<std::size_t>(n_total));
    for (std::size_t a = 0; a < mu.size(); ++a) {
        const double s = std::sqrt(std::max(0.0, 1.0 - mu[a] * mu[a]));
        for (int j = 0; j < n_phi; ++j) {
            const double phi = (j + 0.5) * dphi;
            nodes_.push_back({mu[a], s * std::cos(phi), s * std::sin(phi)});
            weights_.push_back(wmu[a] * dphi);
        }
    }

    // Node (a, j) has antipode (a', j + n_phi/2) where mu[a'] = -mu[a].
    antipode_.resize(static_cast<std::size_t>(n_total));
    const int n_mu_total = 2 * n_mu;
    for (int a = 0; a < n_mu_total; ++a) {
        const int a_opp = a < n_mu ? a + n_mu : a - n_mu;
        for (int j = 0; j < n_phi; ++j) {
            const int j_opp = (j + n_phi / 2) % n_phi;
            antipode_[static_cast<std::size_t>(a * n_phi + j)] = a_opp * n_phi + j_opp;
        }
    }
    // cos(phi + pi) is not bit-exactly -cos(phi); copy the negated
    // positive hemisphere so that antipodes cancel exactly.
    for (int q = n_mu * n_phi; q < n_total; ++q)
        nodes_[static_cast<std::size_t>(antipode_[static_cast<std::size_t>(q)])] = -nodes_[static_cast<std::size_t>(q)];
}

ShiftStencil make_stencil(const SpatialGrid& grid, double x) {
    ShiftStencil st;
    if (!(x >= 0.0 && x <= grid.length())) return st;
    st.inside = true;
    const int n = grid.cells();
    const double u = x / grid.dx() - 0.5;
    if (u <= 0.0) {
        st.lo = st.hi = 0;
        st.w_lo = 1.0;
        return st;
    }
    if (u >= n - 1) {
        st.lo = st.hi = n - 1;
        st.w_lo = 1.0;
        return st;
    }
    const int i = static_cast<int>(std::floor(u));
    const double t = u - i;
    st.lo = i;
    st.hi = i + 1;
    st.w_lo = 1.0 - t;
    st.w_hi = t;
    return st;
}

double shifted_value(const SpatialGrid& grid, std::span<const double> field, double x, double s) {
    if (field.size() != static_cast<std::size_t>(grid.cells()))
        throw std::invalid_argument("field size does not match the spatial grid");
    return make_stencil(grid, x + s).apply(field);
}

}  // namespace enskog
