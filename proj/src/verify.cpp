#include "enskog/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "enskog/boundary.hpp"
#include "enskog/collision.hpp"
#include "enskog/config_oracle.hpp"
#include "enskog/correlation.hpp"
#include "enskog/diagnostics.hpp"

namespace enskog {

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["pass"] = pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"value", c.value},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass},
                               {"details", c.details}});
    }
    return j;
}

Check& Report::expect_le(std::string name, double value, double tolerance, nlohmann::json details) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.tolerance = tolerance;
    c.pass = std::isfinite(value) && value <= tolerance;
    c.details = std::move(details);
    checks.push_back(std::move(c));
    return checks.back();
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"identities", "boundary", "correlation", "fluxes"};
    return names;
}

Report run_verify(const std::string& suite, int resolution) {
    if (resolution < 1) throw std::invalid_argument("resolution must be at least 1");
    if (suite == "identities") return verify_identities(resolution);
    if (suite == "boundary") return verify_boundary(resolution);
    if (suite == "correlation") return verify_correlation(resolution);
    if (suite == "fluxes") return verify_fluxes(resolution);
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
}

Distribution random_smooth_state(const PhaseSpacePtr& ps, std::uint64_t seed, double temperature,
                                 double gas_constant) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double c[6];
    for (double& v : c) v = u(rng);
    const auto& sg = ps->space;
    const auto& vg = ps->velocity;
    const double scale = std::sqrt(gas_constant * temperature);
    Distribution f(ps);
    for (int k = 0; k < sg.cells(); ++k) {
        const double x = sg.center(k) / sg.length();
        const double rho = 1.0 + 0.3 * std::sin(2.0 * kPi * x + c[0]);
        for (int n = 0; n < vg.size(); ++n) {
            const Vec3& xi = vg.node(n);
            // tanh keeps every factor in [-1, 1], so the modulation stays above 0.25
            const double a = std::tanh(0.5 * xi.x / scale);
            const double b = std::tanh(0.5 * xi.y / scale);
            const double d = std::tanh(0.5 * xi.z / scale);
            const double r = 1.0 + 0.15 * c[1] * a * std::cos(3.0 * x) + 0.15 * c[2] * b + 0.15 * c[3] * d * a +
                             0.15 * c[4] * a * b * d * x + 0.15 * c[5] * b * d;
            f.at(k, n) = maxwellian(rho, {}, temperature, gas_constant, xi) * r;
        }
    }
    return f;
}

namespace {

double phi_xi_x(const Vec3& xi) { return xi.x; }
double phi_energy(const Vec3& xi) { return 0.5 * norm2(xi); }

PhaseSpacePtr small_phase_space(int cells, int velocity_points, double xi_max = 4.0) {
    return std::make_shared<PhaseSpace>(SpatialGrid(1.0, cells), VelocityGrid(xi_max, velocity_points));
}

double l1(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double l1_diff(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

struct IdentityTerms {
    std::vector<std::vector<double>> gain_moment;  // per phi, int phi J^G
    std::vector<std::vector<double>> loss_moment;  // per phi, int phi' J^L
    std::vector<double> energy_direct;
    std::vector<double> energy_surface;
    std::vector<double> momentum_direct;
    std::vector<double> momentum_surface;
};

constexpr int kIdentityCells = 4;
constexpr double kIdentitySigma = 0.1;

IdentityTerms identity_terms(int velocity_points, int sphere_order, std::uint64_t seed) {
    auto ps = small_phase_space(kIdentityCells, velocity_points);
    GasProperties gas{kIdentitySigma, 1.0, 1.0};
    CollisionSettings s;
    s.mode = CollisionMode::FullQuadrature;
    s.sphere_order = sphere_order;
    CollisionOperator op(ps, gas, {}, s);
    const Distribution f = random_smooth_state(ps, seed, 1.0, 1.0);
    const auto g = op.correlation_for(f);

    std::vector<double> gain, loss;
    op.gain_loss(f, g, gain, loss);
    std::vector<double> j(gain.size());
    for (std::size_t i = 0; i < j.size(); ++i) j[i] = gain[i] - loss[i];

    IdentityTerms t;
    const auto& vg = ps->velocity;
    for (auto phi : {&phi_xi_x, &phi_energy}) {
        std::vector<double> gm(static_cast<std::size_t>(kIdentityCells), 0.0);
        for (int k = 0; k < kIdentityCells; ++k) {
            for (int n = 0; n < vg.size(); ++n)
                gm[static_cast<std::size_t>(k)] +=
                    vg.weight() * phi(vg.node(n)) * gain[static_cast<std::size_t>(k * vg.size() + n)];
        }
        t.gain_moment.push_back(std::move(gm));
        t.loss_moment.push_back(op.loss_post_moment(f, g, phi));
    }
    t.energy_direct = op.moment_of_J(j, Moment::Energy);
    t.energy_surface = op.surface_energy(f, g);
    t.momentum_direct = op.moment_of_J(j, Moment::MomentumX);
    t.momentum_surface = op.surface_momentum(f, g, 0);
    return t;
}

double exchange_residual(const IdentityTerms& t) {
    double worst = 0.0;
    for (std::size_t p = 0; p < t.gain_moment.size(); ++p) {
        const double scale = l1(t.gain_moment[p]) + l1(t.loss_moment[p]);
        worst = std::max(worst, 2.0 * l1_diff(t.gain_moment[p], t.loss_moment[p]) / scale);
    }
    return worst;
}

double forms_residual(std::span<const double> direct, std::span<const double> surface) {
    return 2.0 * l1_diff(direct, surface) / (l1(direct) + l1(surface));
}

}  // namespace

IdentityResiduals identity_residuals(int velocity_points, int sphere_order, std::uint64_t seed) {
    const auto t = identity_terms(velocity_points, sphere_order, seed);
    IdentityResiduals r;
    r.velocity_points = velocity_points;
    r.sphere_order = sphere_order;
    r.exchange = exchange_residual(t);
    r.energy_forms = forms_residual(t.energy_direct, t.energy_surface);
    r.momentum_forms = forms_residual(t.momentum_direct, t.momentum_surface);
    return r;
}

DomainMomentPoint domain_moment_point(int sphere_order, std::uint64_t seed, int velocity_points, int cells, double sigma) {
    auto ps = small_phase_space(cells, velocity_points);
    GasProperties gas{sigma, 1.0, 1.0};
    CollisionSettings s;
    s.mode = CollisionMode::FullQuadrature;
    s.sphere_order = sphere_order;
    CollisionOperator op(ps, gas, {}, s);
    const Distribution f = random_smooth_state(ps, seed, 1.0, 1.0);
    const auto g = op.correlation_for(f);
    std::vector<double> gain, loss;
    op.gain_loss(f, g, gain, loss);
    std::vector<double> j(gain.size());
    for (std::size_t i = 0; i < j.size(); ++i) j[i] = gain[i] - loss[i];
    const auto r = domain_moment_residuals(op, j, f, g, 1.0);
    DomainMomentPoint p;
    p.sphere_order = sphere_order;
    p.momentum = std::abs(r.momentum.x);
    p.energy = std::abs(r.energy);
    p.wall_stress = r.wall_stress;
    p.wall_heat = r.wall_heat;
    return p;
}

Report verify_identities(int resolution) {
    Report rep;
    rep.suite = "identities";
    const std::uint64_t seed = 20;

    // Tiny deterministic grid, then one refinement of velocity grid and sphere together.
    const auto coarse = identity_terms(6, 6, seed);
    const auto fine = identity_terms(6 * (resolution + 1), 6 * (resolution + 1), seed);

    // Quadrature tolerance: the change of the terms themselves under the
    // refinement, i.e. an estimate of their quadrature error on the tiny grid.
    double gain_error = 0.0;
    for (std::size_t p = 0; p < coarse.gain_moment.size(); ++p) {
        const double e = l1_diff(coarse.gain_moment[p], fine.gain_moment[p]) + l1_diff(coarse.loss_moment[p], fine.loss_moment[p]);
        gain_error = std::max(gain_error, e / (0.5 * (l1(coarse.gain_moment[p]) + l1(coarse.loss_moment[p]))));
    }
    const double energy_error =
        (l1_diff(coarse.energy_direct, fine.energy_direct) + l1_diff(coarse.energy_surface, fine.energy_surface)) /
        (0.5 * (l1(coarse.energy_direct) + l1(coarse.energy_surface)));
    const double momentum_error = (l1_diff(coarse.momentum_direct, fine.momentum_direct) +
                                   l1_diff(coarse.momentum_surface, fine.momentum_surface)) /
                                  (0.5 * (l1(coarse.momentum_direct) + l1(coarse.momentum_surface)));

    const double ex_c = exchange_residual(coarse);
    const double ex_f = exchange_residual(fine);
    const double en_c = forms_residual(coarse.energy_direct, coarse.energy_surface);
    const double en_f = forms_residual(fine.energy_direct, fine.energy_surface);
    const double mo_c = forms_residual(coarse.momentum_direct, coarse.momentum_surface);
    const double mo_f = forms_residual(fine.momentum_direct, fine.momentum_surface);
    const int nf = 6 * (resolution + 1);

    rep.expect_le("moment_exchange", ex_c, gain_error, {{"velocity_points", 6}, {"sphere_order", 6}});
    rep.expect_le("moment_exchange_refined", ex_f, ex_c, {{"velocity_points", nf}, {"sphere_order", nf}});
    rep.expect_le("energy_forms", en_c, energy_error, {{"velocity_points", 6}, {"sphere_order", 6}});
    rep.expect_le("energy_forms_refined", en_f, en_c, {{"velocity_points", nf}, {"sphere_order", nf}});
    rep.expect_le("momentum_forms", mo_c, momentum_error, {{"velocity_points", 6}, {"sphere_order", 6}});
    rep.expect_le("momentum_forms_refined", mo_f, mo_c, {{"velocity_points", nf}, {"sphere_order", nf}});

    // Equilibrium annihilates the operator; the projection keeps mass per cell.
    {
        auto ps = small_phase_space(4, 8, 5.0);
        GasProperties gas{0.05, 1.0, 1.0};
        CollisionSettings s;
        s.mode = CollisionMode::FullQuadrature;
        s.sphere_order = 8;
        CollisionOperator op(ps, gas, {}, s);
        std::vector<double> one(4, 1.0), zero(4, 0.0);
        const auto f = make_local_maxwellian(ps, one, zero, one, 1.0);
        const auto res = op.apply(f);
        double fmax = 0.0;
        for (double v : f.data()) fmax = std::max(fmax, v);
        rep.expect_le("equilibrium_J", res.max_abs_j / fmax, 1e-12);

        const auto rnd = random_smooth_state(ps, seed, 1.0, 1.0);
        const auto jr = op.apply(rnd);
        const auto mass = op.moment_of_J(jr.j, Moment::Mass);
        double worst = 0.0;
        for (double m : mass) worst = std::max(worst, std::abs(m));
        rep.expect_le("projected_mass", worst / jr.max_abs_j, 1e-13);
    }
    return rep;
}

namespace {

const std::vector<WallSpec>& acceptance_walls() {
    static const std::vector<WallSpec> walls{
        {WallKernelKind::Diffuse, 1.0, 1.0, 1.0},
        {WallKernelKind::Maxwell, 0.5, 1.0, 1.0},
        {WallKernelKind::CercignaniLampis, 1.0, 0.8, 0.9},
    };
    return walls;
}

std::string wall_label(const WallSpec& w, WallSide side) {
    std::string s = w.kind == WallKernelKind::Diffuse ? "diffuse" : w.kind == WallKernelKind::Maxwell ? "maxwell" : "cl";
    return s + (side == WallSide::Left ? "_left" : "_right");
}

}  // namespace

Report verify_boundary(int resolution) {
    Report rep;
    rep.suite = "boundary";
    const double tw = 1.0;
    const double r = 1.0;
    const VelocityGrid vg(6.2, 16);
    const auto fw = unit_maxwellian_nodes(vg, tw, r);
    const int states = 100 * resolution;

    for (const auto& spec : acceptance_walls()) {
        for (WallSide side : {WallSide::Left, WallSide::Right}) {
            const WallKernel kernel(vg, spec, tw, r, side);
            const std::string label = wall_label(spec, side);
            rep.expect_le(label + "_normalization", kernel.normalization_error(), 1e-6);
            rep.expect_le(label + "_equilibrium", kernel.equilibrium_error(), 1e-12);

            std::mt19937_64 rng(mix_seed(99, static_cast<std::uint64_t>(rep.checks.size())));
            std::uniform_real_distribution<double> u(0.0, 1.0);
            double worst = -std::numeric_limits<double>::infinity();
            double worst_net = 0.0;
            for (int s = 0; s < states; ++s) {
                // Random positive impinging half: a Maxwellian of random
                // temperature and drift times random node noise.
                const double t = 0.3 + 2.7 * u(rng);
                const Vec3 drift{0.5 * (u(rng) - 0.5), 0.5 * (u(rng) - 0.5), 0.5 * (u(rng) - 0.5)};
                std::vector<double> wall(static_cast<std::size_t>(vg.size()), 0.0);
                for (int i : kernel.impinging())
                    wall[static_cast<std::size_t>(i)] =
                        maxwellian(1.0, drift, t, r, vg.node(i)) * (0.5 + u(rng));
                kernel.reflect(wall);
                worst = std::max(worst, dg_boundary_flux(vg, wall, tw, r, side));
                double net = 0.0, scale = 0.0;
                for (int n = 0; n < vg.size(); ++n) {
                    net += kernel.normal_velocity(n) * wall[static_cast<std::size_t>(n)];
                    scale += std::abs(kernel.normal_velocity(n)) * wall[static_cast<std::size_t>(n)];
                }
                worst_net = std::max(worst_net, std::abs(net) / scale);
            }
            rep.expect_le(label + "_dg_random", worst, 1e-10, {{"states", states}});
            rep.expect_le(label + "_impermeability", worst_net, 1e-12, {{"states", states}});

            rep.expect_le(label + "_dg_equilibrium", std::abs(dg_boundary_flux(vg, fw, tw, r, side)), 1e-8);

            // A 1% change of the impinging temperature must give a strictly negative flux.
            double least_negative = -std::numeric_limits<double>::infinity();
            for (double factor : {0.99, 1.01}) {
                std::vector<double> wall(static_cast<std::size_t>(vg.size()), 0.0);
                for (int i : kernel.impinging())
                    wall[static_cast<std::size_t>(i)] = maxwellian(1.0, {}, factor * tw, r, vg.node(i));
                kernel.reflect(wall);
                least_negative = std::max(least_negative, dg_boundary_flux(vg, wall, tw, r, side));
            }
            rep.expect_le(label + "_dg_strict", least_negative, -1e-8);
        }
    }

    // Diffuse wall fed by a hot gas: emitted half is f_w scaled to zero net flux.
    {
        const WallKernel kernel(vg, {}, tw, r, WallSide::Left);
        std::vector<double> wall(static_cast<std::size_t>(vg.size()), 0.0);
        for (int i : kernel.impinging()) wall[static_cast<std::size_t>(i)] = maxwellian(1.0, {}, 2.0 * tw, r, vg.node(i));
        kernel.reflect(wall);
        double in = 0.0, out = 0.0, shape = 0.0, ref = -1.0;
        for (int n : kernel.emitted()) {
            const double ratio = wall[static_cast<std::size_t>(n)] / fw[static_cast<std::size_t>(n)];
            if (ref < 0.0) ref = ratio;
            shape = std::max(shape, std::abs(ratio / ref - 1.0));
            out += kernel.normal_velocity(n) * wall[static_cast<std::size_t>(n)];
        }
        for (int n : kernel.impinging()) in -= kernel.normal_velocity(n) * wall[static_cast<std::size_t>(n)];
        rep.expect_le("diffuse_hot_shape", shape, 1e-12);
        rep.expect_le("diffuse_hot_net_flux", std::abs(out - in) / in, 1e-12);
    }

    // Maxwell kernel is the stated mixture of diffuse and specular.
    {
        const WallKernel maxwell(vg, {WallKernelKind::Maxwell, 0.5, 1.0, 1.0}, tw, r, WallSide::Right);
        const WallKernel diffuse(vg, {}, tw, r, WallSide::Right);
        double worst = 0.0;
        for (int e : maxwell.emitted()) {
            for (int i : maxwell.impinging()) {
                const double mirror = vg.mirror_x(i) == e ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(maxwell.reflection_probability(e, i) -
                                                 (0.5 * diffuse.reflection_probability(e, i) + 0.5 * mirror)));
            }
        }
        rep.expect_le("maxwell_mixture", worst, 1e-14);
    }
    return rep;
}

namespace {

// Closed forms for uniform w in a box with walls in x and periodic y, z.
double cap_volume(double h, double sigma) { return kPi * h * h * (3.0 * sigma - h) / 3.0; }

double closed_Y(double x, double sigma, const OracleBox& box) {
    double ex = 4.0 * kPi * sigma * sigma * sigma / 3.0;
    if (x < sigma) ex -= cap_volume(sigma - x, sigma);
    if (box.lx - x < sigma) ex -= cap_volume(sigma - (box.lx - x), sigma);
    return 1.0 - ex / box.volume();
}

double closed_phi(double sigma, const OracleBox& box) {
    const double s3 = sigma * sigma * sigma;
    return 1.0 - (4.0 * kPi * s3 / 3.0 - kPi * s3 * sigma / (2.0 * box.lx)) / box.volume();
}

}  // namespace

Report verify_correlation(int resolution) {
    Report rep;
    rep.suite = "correlation";
    const std::size_t samples = 20000 * static_cast<std::size_t>(resolution);
    const OracleBox box{1.0, 1.0, 1.0, true};
    const SpatialGrid grid(1.0, 16);

    // Ideal limit on a ramp profile: Theta = 1 almost everywhere.
    for (int n : {2, 3, 5}) {
        const ConfigOracle oracle(box, grid, n, 1e-4, 1.0, samples, 5);
        std::vector<double> w(16);
        for (int k = 0; k < 16; ++k) w[static_cast<std::size_t>(k)] = 1.0 + 0.6 * (grid.center(k) - 0.5);
        const auto st = oracle.state_from_w(w);
        const auto g = oracle.exact_g2(st, {0.3, 0.5, 0.5}, {0.7, 0.2, 0.4});
        const double ideal = (n - 1.0) / n;
        // 1e-12 covers the case where the estimators agree to round-off
        rep.expect_le("ideal_limit_n" + std::to_string(n), std::abs(g.value - ideal), 3.0 * g.std_error + 1e-12,
                      g.to_json({{"particles", n}, {"sigma", 1e-4}, {"expected", ideal}}));
    }

    // N = 2, uniform w: g2 = phi / (2 Y(X1) Y(X2)) in closed form.
    {
        const double sigma = 0.2;
        const ConfigOracle oracle(box, grid, 2, sigma, 1.0, samples, 6);
        const auto st = oracle.state_from_w(std::vector<double>(16, 1.0));
        const Vec3 x1{0.05, 0.5, 0.5};
        const Vec3 x2{0.2, 0.55, 0.6};
        const auto g = oracle.exact_g2(st, x1, x2);
        const double closed = closed_phi(sigma, box) / (2.0 * closed_Y(x1.x, sigma, box) * closed_Y(x2.x, sigma, box));
        rep.expect_le("pair_closed_form", std::abs(g.value - closed), 3.0 * g.std_error,
                      g.to_json({{"particles", 2}, {"sigma", sigma}, {"expected", closed}}));
        const auto phi = oracle.config_phi(st.w_x);
        rep.expect_le("phi_closed_form", std::abs(phi.value - closed_phi(sigma, box)), 3.0 * phi.std_error,
                      phi.to_json({{"expected", closed_phi(sigma, box)}}));
    }

    // Reduction identity for N = 3 on a smooth ramp density.
    {
        const double sigma = 0.15;
        const ConfigOracle oracle(box, grid, 3, sigma, 1.0, 50 * samples, 8);
        std::vector<double> rho(16);
        double total = 0.0;
        for (int k = 0; k < 16; ++k) {
            rho[static_cast<std::size_t>(k)] = 1.0 + 0.5 * grid.center(k);
            total += rho[static_cast<std::size_t>(k)] * grid.dx();
        }
        for (double& v : rho) v *= 3.0 / total;
        const auto st = oracle.invert_density_to_w(rho, 1e-3);
        for (double x : {0.35, 0.5, 0.65}) {
            const auto chk = oracle.verify_reduction_identity(st, {x, 0.5, 0.5}, 16, 0.05);
            char name[48];
            std::snprintf(name, sizeof name, "reduction_identity_x%.2f", x);
            rep.expect_le(name, std::abs(chk.lhs - chk.rhs), 3.0 * chk.combined_std_error(), chk.to_json());
        }
    }

    // Contact value of the closure at eta = 0.2 and its monotonicity.
    rep.expect_le("cs_contact_value", std::abs(cs_contact_value(0.2) - 1.7578125), 1e-14);
    {
        double prev = 0.0;
        double worst = 0.0;
        for (int i = 0; i <= 60; ++i) {
            const double v = cs_contact_value(0.01 * i);
            worst = std::max(worst, prev - v);
            prev = v;
        }
        rep.expect_le("cs_contact_monotone", worst, 0.0);
    }
    return rep;
}

namespace {

struct UniformCase {
    double sigma = 0.02;
    double mass = 1.0;
    double rho = 2250.0;
    double temperature = 1.0;
    double drift = 0.0;
    CorrelationKind kind = CorrelationKind::Unity;
};

struct UniformResult {
    double closed = 0.0;
    double worst_diag = 0.0;    // max relative deviation over interior positions
    double worst_offdiag = 0.0; // max |p_ij| / p_closed
    double worst_heat = 0.0;    // max |q| / (p_closed sqrt(RT))
    double wall_stress = 0.0;
    double wall_heat = 0.0;
    double mean_xx = 0.0;
};

UniformResult uniform_fluxes(const UniformCase& c, int velocity_points, int sphere_order) {
    const double r = 1.0;
    auto ps = std::make_shared<PhaseSpace>(SpatialGrid(1.0, 16), VelocityGrid(6.2, velocity_points));
    const GasProperties gas{c.sigma, c.mass, r};
    std::vector<double> rho(16, c.rho), u(16, c.drift), t(16, c.temperature);
    const auto f = make_local_maxwellian(ps, rho, u, t, r);
    CorrelationModel model;
    model.kind = c.kind;
    const PairCorrelation g(model, ps->space, f.density(), gas);
    const ProjectedSphere sphere(ps->velocity, SphereQuadrature(sphere_order));
    const auto x = flux_positions(ps->space);
    const auto fl = collisional_fluxes(f, g, sphere, gas, x, 1.0);

    const double gc = c.kind == CorrelationKind::ContactCS ? cs_contact_value(packing_fraction(c.rho, c.sigma, c.mass)) : 1.0;
    UniformResult res;
    res.closed = 2.0 * kPi * c.sigma * c.sigma * c.sigma * gc * c.rho * c.rho * r * c.temperature / (3.0 * c.mass);
    int count = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& p = fl.p[i];
        const bool wall = x[i] == 0.0 || x[i] == 1.0;
        if (wall) {
            for (double v : p) res.wall_stress = std::max(res.wall_stress, std::abs(v));
            res.wall_heat = std::max(res.wall_heat, std::max({std::abs(fl.q[i].x), std::abs(fl.q[i].y), std::abs(fl.q[i].z)}));
            continue;
        }
        if (x[i] < c.sigma || x[i] > 1.0 - c.sigma) continue;
        for (int d = 0; d < 3; ++d)
            res.worst_diag = std::max(res.worst_diag, std::abs(p[static_cast<std::size_t>(d)] / res.closed - 1.0));
        for (int d = 3; d < 6; ++d)
            res.worst_offdiag = std::max(res.worst_offdiag, std::abs(p[static_cast<std::size_t>(d)]) / res.closed);
        const double q = std::max({std::abs(fl.q[i].x), std::abs(fl.q[i].y), std::abs(fl.q[i].z)});
        res.worst_heat = std::max(res.worst_heat, q / (res.closed * std::sqrt(r * c.temperature)));
        res.mean_xx += p[0];
        ++count;
    }
    res.mean_xx /= count;
    return res;
}

}  // namespace

Report verify_fluxes(int resolution) {
    Report rep;
    rep.suite = "fluxes";
    const int nv = 16;
    const int order = 8 * resolution;

    const auto base = uniform_fluxes({}, nv, order);
    nlohmann::json info{{"closed_form", base.closed}, {"mean_xx", base.mean_xx}};
    rep.expect_le("stress_closed_form", base.worst_diag, 0.02, info);
    rep.expect_le("stress_off_diagonal", base.worst_offdiag, 1e-3);
    rep.expect_le("wall_stress", base.wall_stress, 0.0);
    rep.expect_le("wall_heat", base.wall_heat, 0.0);
    rep.expect_le("heat_resting", base.worst_heat, 1e-10);

    UniformCase moving;
    moving.drift = 0.3;
    const auto mv = uniform_fluxes(moving, nv, order);
    rep.expect_le("heat_moving", mv.worst_heat, 1e-4, {{"drift", moving.drift}});
    rep.expect_le("stress_moving", mv.worst_diag, 0.02, {{"drift", moving.drift}});

    UniformCase dense;
    dense.kind = CorrelationKind::ContactCS;
    dense.sigma = 0.03;
    dense.rho = 3500.0;
    const auto cs = uniform_fluxes(dense, nv, order);
    rep.expect_le("stress_closed_form_cs", cs.worst_diag, 0.02, {{"closed_form", cs.closed}});

    UniformCase heavy;
    heavy.mass = 2.0;
    const auto hv = uniform_fluxes(heavy, nv, order);
    rep.expect_le("stress_mass_scaling", hv.worst_diag, 0.02, {{"closed_form", hv.closed}, {"mean_xx", hv.mean_xx}});

    UniformCase half;
    half.sigma = 0.01;
    const auto hs = uniform_fluxes(half, nv, order);
    rep.expect_le("stress_sigma_cubed", std::abs(base.mean_xx / hs.mean_xx / 8.0 - 1.0), 0.02);

    // Heat flows down a temperature ramp.
    {
        auto ps = std::make_shared<PhaseSpace>(SpatialGrid(1.0, 16), VelocityGrid(6.2, nv));
        const GasProperties gas{0.05, 1.0, 1.0};
        std::vector<double> rho(16, 2000.0), u(16, 0.0), t(16);
        for (int k = 0; k < 16; ++k) t[static_cast<std::size_t>(k)] = 0.8 + 0.4 * ps->space.center(k);
        const auto f = make_local_maxwellian(ps, rho, u, t, 1.0);
        const PairCorrelation g({}, ps->space, f.density(), gas);
        const ProjectedSphere sphere(ps->velocity, SphereQuadrature(order));
        std::vector<double> x;
        for (int k = 3; k < 13; ++k) x.push_back(ps->space.center(k));
        const auto fl = collisional_fluxes(f, g, sphere, gas, x, 1.0);
        double largest = -std::numeric_limits<double>::infinity();
        for (const auto& q : fl.q) largest = std::max(largest, q.x);
        rep.expect_le("heat_down_gradient", largest, 0.0);
    }
    return rep;
}

}  // namespace enskog
