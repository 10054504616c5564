#include "enskog/vlasov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace enskog {

std::vector<double> cell_pair_matrix(const SpatialGrid& grid, const std::function<double(double)>& kernel,
                                     std::span<const double> kinks, int points) {
    std::vector<double> gx;
    std::vector<double> gw;
    gauss_legendre(points, gx, gw);
    const int n = grid.cells();
    const double dx = grid.dx();
    // The cell pair integral depends on d = j - k only:
    // int over s of K(s) (dx - |s - d dx|)_+.
    std::vector<double> by_offset(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
        std::vector<double> breaks{(d - 1) * dx, d * dx, (d + 1) * dx};
        for (double k : kinks)
            for (double s : {k, -k})
                if (s > (d - 1) * dx && s < (d + 1) * dx) breaks.push_back(s);
        std::sort(breaks.begin(), breaks.end());
        double total = 0.0;
        for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
            const double lo = breaks[b];
            const double hi = breaks[b + 1];
            if (hi - lo <= 0.0) continue;
            const double half = 0.5 * (hi - lo);
            const double mid = 0.5 * (hi + lo);
            for (int q = 0; q < points; ++q) {
                const double s = mid + half * gx[static_cast<std::size_t>(q)];
                const double tri = std::max(0.0, dx - std::abs(s - d * dx));
                total += half * gw[static_cast<std::size_t>(q)] * kernel(s) * tri;
            }
        }
        by_offset[static_cast<std::size_t>(d)] = total;
    }
    std::vector<double> m(static_cast<std::size_t>(n * n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m[static_cast<std::size_t>(j * n + k)] = by_offset[static_cast<std::size_t>(std::abs(j - k))];
    return m;
}

VlasovField::VlasovField(const SpatialGrid& grid, VlasovSettings settings, double mass)
    : grid_(grid), settings_(settings), mass_(mass) {
    if (!(settings_.epsilon >= 0.0)) throw std::invalid_argument("vlasov epsilon must be non-negative");
    if (!(settings_.gamma > 2.0)) throw std::invalid_argument("vlasov gamma must exceed 2");
    if (!(settings_.core_radius > 0.0)) throw std::invalid_argument("vlasov core radius must be positive");
    rc_ = settings_.core_radius;
    const double kinks[] = {rc_};
    pair_ = cell_pair_matrix(grid_, [this](double s) { return slab_kernel(s); }, kinks);
    const int n = grid_.cells();
    face_kernel_.resize(static_cast<std::size_t>(2 * n + 1));
    for (int d = -n; d <= n; ++d) face_kernel_[static_cast<std::size_t>(d + n)] = slab_kernel((d + 0.5) * grid_.dx());
}

double VlasovField::phi(double r) const {
    const double depth = settings_.epsilon / (mass_ * mass_);
    if (r <= rc_) return -depth;
    return -depth * std::pow(rc_ / r, settings_.gamma);
}

double VlasovField::slab_kernel(double s) const {
    const double depth = settings_.epsilon / (mass_ * mass_);
    const double g = settings_.gamma;
    const double a = std::abs(s);
    if (a <= rc_) return 2.0 * kPi * (-depth * (rc_ * rc_ - a * a) / 2.0 - depth * rc_ * rc_ / (g - 2.0));
    return -2.0 * kPi * depth * std::pow(rc_, g) * std::pow(a, 2.0 - g) / (g - 2.0);
}

std::vector<double> VlasovField::force(std::span<const double> rho) const {
    const int n = grid_.cells();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    // F_k = sum_j rho_j [K(y_{j+1/2} - x_k) - K(y_{j-1/2} - x_k)], antisymmetric in (j, k).
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            const int d = j - k;
            s += rho[static_cast<std::size_t>(j)] *
                 (face_kernel_[static_cast<std::size_t>(d + n)] - face_kernel_[static_cast<std::size_t>(d - 1 + n)]);
        }
        out[static_cast<std::size_t>(k)] = s;
    }
    return out;
}

double VlasovField::potential_energy(std::span<const double> rho) const {
    const int n = grid_.cells();
    double e = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            e += rho[static_cast<std::size_t>(j)] * rho[static_cast<std::size_t>(k)] * pair_[static_cast<std::size_t>(j * n + k)];
    return 0.5 * e;
}

double VlasovField::min_pair_integral() const { return *std::min_element(pair_.begin(), pair_.end()); }

namespace {

std::vector<double> face_weights(const VelocityGrid& v, double wall_temperature, double gas_constant,
                                 std::vector<double>& fhat) {
    const int n = v.per_axis();
    const double rt = gas_constant * wall_temperature;
    fhat.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) fhat[static_cast<std::size_t>(j)] = std::exp(-v.axis_value(j) * v.axis_value(j) / (2.0 * rt));
    // faces j + 1/2 for j = -1 .. n-1, stored at j + 1
    std::vector<double> m(static_cast<std::size_t>(n + 1), 0.0);
    for (int j = 0; j < n; ++j)
        m[static_cast<std::size_t>(j + 1)] =
            m[static_cast<std::size_t>(j)] - v.spacing() * v.axis_value(j) * fhat[static_cast<std::size_t>(j)] / rt;
    m[static_cast<std::size_t>(n)] = 0.0;
    return m;
}

}  // namespace

double VlasovField::transport_rate(double wall_temperature, double gas_constant, const VelocityGrid& grid) const {
    std::vector<double> fhat;
    const auto m = face_weights(grid, wall_temperature, gas_constant, fhat);
    double rate = 0.0;
    const int n = grid.per_axis();
    for (int j = 0; j < n; ++j) {
        const double out = std::max(m[static_cast<std::size_t>(j + 1)], m[static_cast<std::size_t>(j)]);
        rate = std::max(rate, out / (grid.spacing() * fhat[static_cast<std::size_t>(j)]));
    }
    return rate;
}

void VlasovField::transport(Distribution& f, std::span<const double> force, double dt, double wall_temperature,
                            double gas_constant) const {
    const auto& vg = f.phase_space().velocity;
    const int n = vg.per_axis();
    std::vector<double> fhat;
    const auto m = face_weights(vg, wall_temperature, gas_constant, fhat);
    const double c = dt / vg.spacing();
    std::vector<double> g(static_cast<std::size_t>(n));
    std::vector<double> flux(static_cast<std::size_t>(n + 1));
    for (int k = 0; k < f.cells(); ++k) {
        const double fk = force[static_cast<std::size_t>(k)];
        if (fk == 0.0) continue;
        auto cell = f.cell(k);
        for (int jy = 0; jy < n; ++jy) {
            for (int jz = 0; jz < n; ++jz) {
                for (int j = 0; j < n; ++j)
                    g[static_cast<std::size_t>(j)] = cell[static_cast<std::size_t>(vg.index(j, jy, jz))] / fhat[static_cast<std::size_t>(j)];
                flux[0] = 0.0;
                flux[static_cast<std::size_t>(n)] = 0.0;
                for (int j = 0; j + 1 < n; ++j) {
                    const double up = fk > 0.0 ? g[static_cast<std::size_t>(j)] : g[static_cast<std::size_t>(j + 1)];
                    flux[static_cast<std::size_t>(j + 1)] = fk * m[static_cast<std::size_t>(j + 1)] * up;
                }
                for (int j = 0; j < n; ++j)
                    cell[static_cast<std::size_t>(vg.index(j, jy, jz))] -=
                        c * (flux[static_cast<std::size_t>(j + 1)] - flux[static_cast<std::size_t>(j)]);
            }
        }
    }
}

}  // namespace enskog
