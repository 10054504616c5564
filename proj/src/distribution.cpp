#include "enskog/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace enskog {

Distribution::Distribution(PhaseSpacePtr ps) : ps_(std::move(ps)) {
    if (!ps_) throw std::invalid_argument("distribution needs a phase space");
    data_.assign(static_cast<std::size_t>(cells()) * static_cast<std::size_t>(nodes()), 0.0);
}

double Distribution::total_mass() const {
    double s = 0.0;
    for (double v : data_) s += v;
    return s * ps_->space.dx() * ps_->velocity.weight();
}

std::vector<double> Distribution::density() const {
    std::vector<double> rho(static_cast<std::size_t>(cells()), 0.0);
    const double w = ps_->velocity.weight();
    for (int k = 0; k < cells(); ++k) {
        double s = 0.0;
        for (double v : cell(k)) s += v;
        rho[static_cast<std::size_t>(k)] = s * w;
    }
    return rho;
}

bool Distribution::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

double maxwellian(double rho, const Vec3& u, double temperature, double gas_constant, const Vec3& xi) {
    const double rt = gas_constant * temperature;
    const Vec3 c = xi - u;
    return rho / std::pow(2.0 * kPi * rt, 1.5) * std::exp(-norm2(c) / (2.0 * rt));
}

std::vector<double> unit_maxwellian_nodes(const VelocityGrid& grid, double temperature, double gas_constant) {
    std::vector<double> out(static_cast<std::size_t>(grid.size()));
    for (int n = 0; n < grid.size(); ++n)
        out[static_cast<std::size_t>(n)] = maxwellian(1.0, {}, temperature, gas_constant, grid.node(n));
    return out;
}

Distribution make_local_maxwellian(const PhaseSpacePtr& ps, std::span<const double> rho, std::span<const double> u_x,
                                   std::span<const double> temperature, double gas_constant) {
    Distribution f(ps);
    const int nx = f.cells();
    if (rho.size() != static_cast<std::size_t>(nx) || u_x.size() != rho.size() || temperature.size() != rho.size())
        throw std::invalid_argument("moment profiles must have one entry per cell");
    const auto& vg = ps->velocity;
    for (int k = 0; k < nx; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        if (rho[kk] < 0.0 || !(temperature[kk] > 0.0))
            throw std::invalid_argument("local Maxwellian needs rho >= 0 and T > 0");
        double mass = 0.0;
        auto c = f.cell(k);
        for (int n = 0; n < vg.size(); ++n) {
            c[static_cast<std::size_t>(n)] = maxwellian(1.0, {u_x[kk], 0.0, 0.0}, temperature[kk], gas_constant, vg.node(n));
            mass += c[static_cast<std::size_t>(n)];
        }
        mass *= vg.weight();
        const double scale = mass > 0.0 ? rho[kk] / mass : 0.0;
        for (double& v : c) v *= scale;
    }
    return f;
}

}  // namespace enskog
