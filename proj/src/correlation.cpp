#include "enskog/correlation.hpp"

#include <cmath>
#include <string>

namespace enskog {

double packing_fraction(double rho, double sigma, double mass) {
    return kPi * sigma * sigma * sigma * rho / (6.0 * mass);
}

double cs_contact_value(double eta) {
    if (!(eta >= 0.0) || eta >= kMaxPackingFraction)
        throw DomainError("packing fraction " + std::to_string(eta) + " outside [0, 0.64)");
    const double d = 1.0 - eta;
    return (1.0 - 0.5 * eta) / (d * d * d);
}

double cs_excess_free_energy(double eta) {
    if (!(eta >= 0.0) || eta >= kMaxPackingFraction)
        throw DomainError("packing fraction " + std::to_string(eta) + " outside [0, 0.64)");
    const double d = 1.0 - eta;
    return eta * (4.0 - 3.0 * eta) / (d * d);
}

PairCorrelation::PairCorrelation(const CorrelationModel& model, const SpatialGrid& grid, std::vector<double> rho,
                                 const GasProperties& gas)
    : model_(model), grid_(grid), rho_(std::move(rho)), gas_(gas) {
    if (rho_.size() != static_cast<std::size_t>(grid_.cells()))
        throw std::invalid_argument("density must have one entry per cell");
    if (model_.kind == CorrelationKind::ContactCS) {
        for (double r : rho_) (void)cs_contact_value(packing_fraction(r, gas_.sigma, gas_.mass));
    }
    if (model_.kind == CorrelationKind::ConfigOracle) {
        const auto& o = model_.oracle;
        OracleBox box{grid_.length(), o.transverse_extent, o.transverse_extent, true};
        // N follows from the slab mass in the oracle cross section.
        double mass_per_area = 0.0;
        for (double r : rho_) mass_per_area += r * grid_.dx();
        const double n_float = mass_per_area * box.ly * box.lz / gas_.mass;
        const int n = static_cast<int>(std::lround(n_float));
        if (n != o.particles || std::abs(n_float - n) > 1e-3 * n)
            throw std::invalid_argument("density holds " + std::to_string(n_float) +
                                        " particles in the oracle cross section, expected " +
                                        std::to_string(o.particles));
        oracle_ = std::make_unique<ConfigOracle>(box, grid_, o.particles, gas_.sigma, gas_.mass, o.samples, o.seed);
        state_ = std::make_unique<ConfigState>(oracle_->invert_density_to_w(rho_, o.tolerance));
    }
}

double PairCorrelation::operator()(double x, double y) const {
    const double len = grid_.length();
    if (!(x >= 0.0 && x <= len && y >= 0.0 && y <= len)) return 0.0;
    switch (model_.kind) {
        case CorrelationKind::Unity:
            return 1.0;
        case CorrelationKind::ContactCS: {
            const double rho_mid = make_stencil(grid_, 0.5 * (x + y)).apply(rho_);
            return cs_contact_value(packing_fraction(rho_mid, gas_.sigma, gas_.mass));
        }
        case CorrelationKind::ConfigOracle: {
            // Order the pair so that the cache is symmetric.
            const double a = std::min(x, y);
            const double b = std::max(x, y);
            const double q = 1e-9 * len;
            const std::pair<long long, long long> key{std::llround(a / q), std::llround(b / q)};
            {
                std::lock_guard lock(cache_mutex_);
                if (auto it = cache_.find(key); it != cache_.end()) return it->second;
            }
            const double sep = b - a;
            const double s = gas_.sigma;
            const double t = sep < s ? std::sqrt(s * s - sep * sep) : 0.0;
            const auto& box = oracle_->box();
            const Vec3 p1{a, 0.5 * box.ly, 0.5 * box.lz};
            const Vec3 p2{b, 0.5 * box.ly + t, 0.5 * box.lz};
            const double g = oracle_->exact_g2(*state_, p1, p2).value;
            std::lock_guard lock(cache_mutex_);
            cache_.emplace(key, g);
            return g;
        }
    }
    return 0.0;
}

double eval_g(const CorrelationModel& model, const SpatialGrid& grid, std::span<const double> rho,
              const GasProperties& gas, double x, double y) {
    return PairCorrelation(model, grid, {rho.begin(), rho.end()}, gas)(x, y);
}

}  // namespace enskog
