#include "enskog/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "enskog/parallel.hpp"

namespace enskog {

CellMoments velocity_moments(const VelocityGrid& grid, std::span<const double> f, double wall_temperature,
                             double gas_constant) {
    CellMoments m;
    double rho = 0.0;
    Vec3 mom;
    for (int n = 0; n < grid.size(); ++n) {
        const double fn = f[static_cast<std::size_t>(n)];
        rho += fn;
        mom = mom + fn * grid.node(n);
    }
    const double w = grid.weight();
    m.rho = rho * w;
    if (!(rho > 0.0)) {
        m.rho = 0.0;
        m.temperature = wall_temperature;
        return m;
    }
    m.v = (1.0 / rho) * mom;
    double e = 0.0;
    for (int n = 0; n < grid.size(); ++n) e += f[static_cast<std::size_t>(n)] * norm2(grid.node(n) - m.v);
    m.temperature = e / (3.0 * gas_constant * rho);
    return m;
}

MomentSet moments(const Distribution& f, double wall_temperature, double gas_constant) {
    MomentSet out;
    const auto cells = static_cast<std::size_t>(f.cells());
    out.rho.resize(cells);
    out.v.resize(cells);
    out.temperature.resize(cells);
    for (int k = 0; k < f.cells(); ++k) {
        const auto m = velocity_moments(f.phase_space().velocity, f.cell(k), wall_temperature, gas_constant);
        out.rho[static_cast<std::size_t>(k)] = m.rho;
        out.v[static_cast<std::size_t>(k)] = m.v;
        out.temperature[static_cast<std::size_t>(k)] = m.temperature;
    }
    return out;
}

namespace {

void interpolate_cell(const Distribution& f, double x, std::vector<double>& out) {
    const ShiftStencil st = make_stencil(f.phase_space().space, x);
    out.assign(static_cast<std::size_t>(f.nodes()), 0.0);
    if (!st.inside) return;
    const auto lo = f.cell(st.lo);
    const auto hi = f.cell(st.hi);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = st.w_lo * lo[n] + st.w_hi * hi[n];
}

}  // namespace

std::vector<double> flux_positions(const SpatialGrid& grid) {
    std::vector<double> x;
    x.push_back(0.0);
    for (int k = 0; k < grid.cells(); ++k) x.push_back(grid.center(k));
    x.push_back(grid.length());
    return x;
}

CollisionalFluxes collisional_fluxes(const Distribution& f, const PairCorrelation& g, const ProjectedSphere& sphere,
                                     const GasProperties& gas, std::span<const double> x, double wall_temperature,
                                     int lambda_points) {
    if (lambda_points < 1) throw std::invalid_argument("lambda rule needs at least one point");
    const auto& vg = f.phase_space().velocity;
    const auto& sq = sphere.sphere();
    const double w2 = vg.weight() * vg.weight();
    const double sigma = gas.sigma;
    const double dl = sigma / lambda_points;
    CollisionalFluxes out;
    out.x.assign(x.begin(), x.end());
    out.p.assign(x.size(), {});
    out.q.assign(x.size(), Vec3{});
    parallel_for(static_cast<int>(x.size()), [&](int b, int e) {
        std::vector<double> fa;
        std::vector<double> fb;
        std::vector<double> fx;
        for (int i = b; i < e; ++i) {
            const double xi = x[static_cast<std::size_t>(i)];
            interpolate_cell(f, xi, fx);
            const Vec3 v = velocity_moments(vg, fx, wall_temperature, gas.gas_constant).v;
            std::array<double, 6> p{};
            Vec3 q;
            for (int d = 0; d < sq.size(); ++d) {
                const Vec3& a = sq.node(d);
                const double wa = v.x * a.x + v.y * a.y + v.z * a.z;
                double quad = 0.0;
                double heat = 0.0;
                for (int l = 0; l < lambda_points; ++l) {
                    const double lam = (l + 0.5) * dl;
                    const double xa = xi + lam * a.x;
                    const double xb = xi + (lam - sigma) * a.x;
                    const double gv = g(xa, xb);
                    if (gv == 0.0) continue;
                    interpolate_cell(f, xa, fa);
                    interpolate_cell(f, xb, fb);
                    const auto s = sphere.pair_sums(d, fa, fb);
                    quad += gv * s.quadratic;
                    heat += gv * (s.cubic - 2.0 * wa * s.quadratic);
                }
                const double wq = sq.weight(d) * dl;
                p[0] += wq * a.x * a.x * quad;
                p[1] += wq * a.y * a.y * quad;
                p[2] += wq * a.z * a.z * quad;
                p[3] += wq * a.x * a.y * quad;
                p[4] += wq * a.x * a.z * quad;
                p[5] += wq * a.y * a.z * quad;
                q = q + (wq * heat) * a;
            }
            const double pp = sigma * sigma / (2.0 * gas.mass) * w2;
            const double pq = sigma * sigma / (4.0 * gas.mass) * w2;
            for (double& c : p) c *= pp;
            out.p[static_cast<std::size_t>(i)] = p;
            out.q[static_cast<std::size_t>(i)] = pq * q;
        }
    });
    return out;
}

DomainMomentResiduals domain_moment_residuals(const CollisionOperator& op, std::span<const double> j) {
    DomainMomentResiduals r;
    const auto mx = op.moment_of_J(j, Moment::MomentumX);
    const auto my = op.moment_of_J(j, Moment::MomentumY);
    const auto mz = op.moment_of_J(j, Moment::MomentumZ);
    const auto en = op.moment_of_J(j, Moment::Energy);
    for (std::size_t k = 0; k < mx.size(); ++k) {
        r.momentum.x += mx[k];
        r.momentum.y += my[k];
        r.momentum.z += mz[k];
        r.energy += en[k];
    }
    const double dx = op.phase_space().space.dx();
    r.momentum = dx * r.momentum;
    r.energy *= dx;
    return r;
}

DomainMomentResiduals domain_moment_residuals(const CollisionOperator& op, std::span<const double> j, const Distribution& f,
                                 const PairCorrelation& g, double wall_temperature) {
    DomainMomentResiduals r = domain_moment_residuals(op, j);
    const auto& sg = f.phase_space().space;
    const double faces[] = {0.0, sg.length()};
    const auto fl = collisional_fluxes(f, g, op.projected(), op.gas(), faces, wall_temperature);
    for (std::size_t i = 0; i < 2; ++i) {
        for (double c : fl.p[i]) r.wall_stress = std::max(r.wall_stress, std::abs(c));
        for (int c = 0; c < 3; ++c) r.wall_heat = std::max(r.wall_heat, std::abs(fl.q[i][c]));
    }
    return r;
}

double h_kinetic(const Distribution& f) {
    const double w = f.phase_space().velocity.weight() * f.phase_space().space.dx();
    double s = 0.0;
    for (double v : f.data())
        if (v > 0.0) s += v * std::log(v);
    return s * w;
}

std::string to_string(HcMode mode) {
    switch (mode) {
        case HcMode::IdealClosedForm: return "ideal";
        case HcMode::ConfigOracle: return "config-oracle";
        case HcMode::CSSurrogate: return "cs-surrogate";
        case HcMode::UnityVirial: return "unity-virial";
    }
    return "?";
}

HcMode hc_mode_from_string(const std::string& name) {
    for (HcMode m : {HcMode::IdealClosedForm, HcMode::ConfigOracle, HcMode::CSSurrogate, HcMode::UnityVirial})
        if (to_string(m) == name) return m;
    throw std::invalid_argument("unknown H^(c) mode '" + name + "' (ideal, config-oracle, cs-surrogate, unity-virial)");
}

std::string to_string(CorrelationKind kind) {
    switch (kind) {
        case CorrelationKind::Unity: return "unity";
        case CorrelationKind::ContactCS: return "contact-cs";
        case CorrelationKind::ConfigOracle: return "config-oracle";
    }
    return "?";
}

CorrelationKind correlation_kind_from_string(const std::string& name) {
    for (CorrelationKind k : {CorrelationKind::Unity, CorrelationKind::ContactCS, CorrelationKind::ConfigOracle})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown correlation model '" + name + "' (unity, contact-cs, config-oracle)");
}

bool consistent_pairing(CorrelationKind kind, HcMode mode) {
    switch (kind) {
        case CorrelationKind::Unity:
            return mode == HcMode::IdealClosedForm || mode == HcMode::UnityVirial;
        case CorrelationKind::ContactCS:
            return mode == HcMode::CSSurrogate;
        case CorrelationKind::ConfigOracle:
            return mode == HcMode::ConfigOracle;
    }
    return false;
}

double h_collisional(const HcContext& ctx, const SpatialGrid& grid, std::span<const double> rho,
                     const ConfigState* state) {
    const double dx = grid.dx();
    double mass = 0.0;
    for (double r : rho) mass += r * dx;
    const double ideal = mass > 0.0 ? -mass * std::log(mass * ctx.transverse_area) : 0.0;
    switch (ctx.mode) {
        case HcMode::IdealClosedForm:
            return ideal;
        case HcMode::CSSurrogate: {
            double s = 0.0;
            for (double r : rho) s += r * cs_excess_free_energy(packing_fraction(r, ctx.gas.sigma, ctx.gas.mass));
            return s * dx;
        }
        case HcMode::UnityVirial: {
            const double s2 = ctx.gas.sigma * ctx.gas.sigma;
            const double kinks[] = {ctx.gas.sigma};
            const auto pair = cell_pair_matrix(
                grid, [s2](double s) { return kPi * std::max(0.0, s2 - s * s); }, kinks);
            const int n = grid.cells();
            double e = 0.0;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    e += rho[static_cast<std::size_t>(j)] * rho[static_cast<std::size_t>(k)] *
                         pair[static_cast<std::size_t>(j * n + k)];
            return ideal + e / (2.0 * ctx.gas.mass);
        }
        case HcMode::ConfigOracle: {
            if (state == nullptr) throw std::invalid_argument("config-oracle H^(c) needs the inverted oracle state");
            const double a = ctx.transverse_area;
            double s = 0.0;
            for (int k = 0; k < grid.cells(); ++k) {
                const double r = rho[static_cast<std::size_t>(k)];
                if (r <= 0.0) continue;
                const double w = state->w_x[static_cast<std::size_t>(k)] / a;
                s += r * std::log(r / w);
            }
            // box totals are s A dx and m ln phi; report per unit area
            return -s * dx - ctx.gas.mass * std::log(state->phi.value) / a;
        }
    }
    return 0.0;
}

FreeEnergy free_energy(const Distribution& f, CorrelationKind kind, const HcContext& ctx, double wall_temperature,
                       const VlasovField* vlasov, const ConfigState* state) {
    if (!consistent_pairing(kind, ctx.mode))
        throw std::invalid_argument("correlation model " + to_string(kind) + " cannot be paired with H^(c) mode " +
                                    to_string(ctx.mode));
    const auto& ps = f.phase_space();
    const auto fw = unit_maxwellian_nodes(ps.velocity, wall_temperature, ctx.gas.gas_constant);
    std::vector<double> log_fw(fw.size());
    for (std::size_t n = 0; n < fw.size(); ++n) log_fw[n] = std::log(fw[n]);
    const double w = ps.velocity.weight() * ps.space.dx();
    FreeEnergy out;
    double rel = 0.0;
    double hk = 0.0;
    double ek = 0.0;
    double mass = 0.0;
    for (int k = 0; k < f.cells(); ++k) {
        const auto c = f.cell(k);
        for (std::size_t n = 0; n < c.size(); ++n) {
            const double v = c[n];
            mass += v;
            ek += 0.5 * norm2(ps.velocity.node(static_cast<int>(n))) * v;
            if (v > 0.0) {
                const double l = std::log(v);
                hk += v * l;
                rel += v * (l - log_fw[n]);
            }
        }
    }
    out.h_kinetic = hk * w;
    out.relative_entropy = rel * w;
    out.kinetic_energy = ek * w;
    out.mass = mass * w;
    const auto rho = f.density();
    out.h_collisional = h_collisional(ctx, ps.space, rho, state);
    const double rt = ctx.gas.gas_constant * wall_temperature;
    out.free_energy = rt * (out.relative_entropy + out.h_collisional);
    out.potential = vlasov != nullptr ? vlasov->potential_energy(rho) : 0.0;
    out.free_energy_prime = out.free_energy + out.potential;
    out.magnitude = rt * (std::abs(out.relative_entropy) + std::abs(out.h_collisional)) + std::abs(out.potential);
    return out;
}

void MonotonicityMonitor::record(double t, double value, double magnitude) {
    times_.push_back(t);
    values_.push_back(value);
    magnitude_ = std::max({magnitude_, std::abs(value), magnitude});
}

MonotonicityMonitor::Verdict MonotonicityMonitor::verdict() const {
    Verdict v;
    if (values_.size() < 2) return v;
    const std::size_t intervals = values_.size() - 1;
    v.tolerance = 1e-3 * std::abs(values_.front() - values_.back()) / static_cast<double>(intervals) +
                  64.0 * std::numeric_limits<double>::epsilon() * magnitude_;
    for (std::size_t i = 0; i < intervals; ++i) {
        const double inc = values_[i + 1] - values_[i];
        v.largest_increase = std::max(v.largest_increase, inc);
        if (inc > v.tolerance) {
            v.pass = false;
            v.violations.push_back({times_[i + 1], inc});
        }
    }
    return v;
}

nlohmann::json MonotonicityMonitor::Verdict::to_json() const {
    nlohmann::json j;
    j["pass"] = pass;
    j["tolerance"] = tolerance;
    j["largest_increase"] = largest_increase;
    j["violations"] = nlohmann::json::array();
    for (const auto& x : violations) j["violations"].push_back({{"t", x.t}, {"increase", x.increase}});
    return j;
}

}  // namespace enskog
