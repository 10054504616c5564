#include <doctest.h>

#include <cmath>

#include "enskog/diagnostics.hpp"

using namespace enskog;

namespace {

PhaseSpacePtr grid(int cells, int nv, double xi_max) {
    return std::make_shared<PhaseSpace>(SpatialGrid(1.0, cells), VelocityGrid(xi_max, nv));
}

}  // namespace

TEST_CASE("moments of a sampled Maxwellian") {
    VelocityGrid vg(6.2, 16);
    std::vector<double> f(static_cast<std::size_t>(vg.size()));
    const Vec3 u{0.3, -0.1, 0.2};
    for (int n = 0; n < vg.size(); ++n) f[static_cast<std::size_t>(n)] = maxwellian(2.0, u, 1.2, 1.0, vg.node(n));
    const auto m = velocity_moments(vg, f, 1.0, 1.0);
    CHECK(m.rho == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(m.v.x == doctest::Approx(u.x).epsilon(1e-4));
    CHECK(m.v.y == doctest::Approx(u.y).epsilon(1e-4));
    CHECK(m.v.z == doctest::Approx(u.z).epsilon(1e-4));
    CHECK(m.temperature == doctest::Approx(1.2).epsilon(1e-4));

    std::vector<double> vac(f.size(), 0.0);
    const auto v = velocity_moments(vg, vac, 0.8, 1.0);
    CHECK(v.rho == 0.0);
    CHECK(v.temperature == 0.8);
}

TEST_CASE("pairing rules") {
    CHECK(consistent_pairing(CorrelationKind::Unity, HcMode::IdealClosedForm));
    CHECK(consistent_pairing(CorrelationKind::Unity, HcMode::UnityVirial));
    CHECK(consistent_pairing(CorrelationKind::ContactCS, HcMode::CSSurrogate));
    CHECK(consistent_pairing(CorrelationKind::ConfigOracle, HcMode::ConfigOracle));
    CHECK_FALSE(consistent_pairing(CorrelationKind::Unity, HcMode::CSSurrogate));
    CHECK_FALSE(consistent_pairing(CorrelationKind::ContactCS, HcMode::IdealClosedForm));
    CHECK_FALSE(consistent_pairing(CorrelationKind::ConfigOracle, HcMode::IdealClosedForm));
    for (auto m : {HcMode::IdealClosedForm, HcMode::ConfigOracle, HcMode::CSSurrogate, HcMode::UnityVirial})
        CHECK(hc_mode_from_string(to_string(m)) == m);
    for (auto k : {CorrelationKind::Unity, CorrelationKind::ContactCS, CorrelationKind::ConfigOracle})
        CHECK(correlation_kind_from_string(to_string(k)) == k);
    CHECK_THROWS(hc_mode_from_string("virial"));

    auto ps = grid(2, 6, 4.0);
    std::vector<double> rho{1.0, 1.0}, u{0.0, 0.0}, t{1.0, 1.0};
    const auto f = make_local_maxwellian(ps, rho, u, t, 1.0);
    HcContext ctx{HcMode::CSSurrogate, {0.05, 1.0, 1.0}, 1.0};
    CHECK_THROWS(free_energy(f, CorrelationKind::Unity, ctx, 1.0));
}

TEST_CASE("collisional H closed forms") {
    SpatialGrid g(1.0, 20);
    std::vector<double> rho(20, 3.0);
    HcContext ctx{HcMode::IdealClosedForm, {0.05, 1.0, 1.0}, 2.0};
    CHECK(h_collisional(ctx, g, rho) == doctest::Approx(-3.0 * std::log(6.0)));

    // uniform slab: int int pi (sigma^2 - s^2)_+ dx dy = 4 pi sigma^3 L/3 - pi sigma^4/2
    ctx.mode = HcMode::UnityVirial;
    const double s = 0.05;
    const double virial = 9.0 / 2.0 * (4.0 * kPi * s * s * s / 3.0 - kPi * s * s * s * s / 2.0);
    CHECK(h_collisional(ctx, g, rho) == doctest::Approx(-3.0 * std::log(6.0) + virial).epsilon(1e-12));

    ctx.mode = HcMode::CSSurrogate;
    const double eta = packing_fraction(3.0, s, 1.0);
    CHECK(h_collisional(ctx, g, rho) == doctest::Approx(3.0 * cs_excess_free_energy(eta)));

    ctx.mode = HcMode::ConfigOracle;
    CHECK_THROWS(h_collisional(ctx, g, rho));
}

TEST_CASE("free energy vanishes for the uniform wall Maxwellian") {
    auto ps = grid(4, 12, 6.0);
    std::vector<double> rho(4, 2.0), u(4, 0.0), t(4, 1.0);
    const auto f = make_local_maxwellian(ps, rho, u, t, 1.0);
    HcContext ctx{HcMode::IdealClosedForm, {0.05, 1.0, 1.0}, 1.0};
    const auto fe = free_energy(f, CorrelationKind::Unity, ctx, 1.0);
    CHECK(std::abs(fe.free_energy) <= 1e-6 * fe.magnitude);
    CHECK(fe.mass == doctest::Approx(2.0));
    CHECK(fe.kinetic_energy == doctest::Approx(3.0).epsilon(1e-6));

    // hotter gas at the same mass has a larger free energy
    std::vector<double> hot(4, 1.5);
    const auto fh = make_local_maxwellian(ps, rho, u, hot, 1.0);
    CHECK(free_energy(fh, CorrelationKind::Unity, ctx, 1.0).free_energy > 1e-3);
}

TEST_CASE("collisional stress of a uniform gas") {
    auto ps = grid(8, 12, 6.0);
    const GasProperties gas{0.04, 1.0, 1.0};
    std::vector<double> rho(8, 500.0), u(8, 0.0), t(8, 1.3);
    const auto f = make_local_maxwellian(ps, rho, u, t, 1.0);
    const PairCorrelation g({}, ps->space, f.density(), gas);
    const ProjectedSphere sphere(ps->velocity, SphereQuadrature(8));
    const auto x = flux_positions(ps->space);
    REQUIRE(x.size() == 10);
    CHECK(x.front() == 0.0);
    CHECK(x.back() == 1.0);
    const auto fl = collisional_fluxes(f, g, sphere, gas, x, 1.0);
    const double closed = 2.0 * kPi * std::pow(0.04, 3) * 500.0 * 500.0 * 1.3 / 3.0;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        CHECK(fl.p[i][0] == doctest::Approx(closed).epsilon(1e-5));
        CHECK(fl.p[i][1] == doctest::Approx(closed).epsilon(1e-5));
        CHECK(std::abs(fl.p[i][3]) <= 1e-10 * closed);
        CHECK(std::abs(fl.q[i].x) <= 1e-10 * closed);
    }
    for (std::size_t i : {std::size_t{0}, x.size() - 1}) {
        for (double v : fl.p[i]) CHECK(v == 0.0);
        CHECK(fl.q[i].x == 0.0);
    }
}

TEST_CASE("monotonicity monitor") {
    MonotonicityMonitor good("F");
    for (int i = 0; i <= 10; ++i) good.record(i, 10.0 - i);
    const auto v = good.verdict();
    CHECK(v.pass);
    CHECK(v.tolerance == doctest::Approx(1e-3 * 10.0 / 10.0).epsilon(1e-6));

    MonotonicityMonitor bad("F");
    for (int i = 0; i <= 10; ++i) bad.record(i, 10.0 - i + (i == 5 ? 1.5 : 0.0));
    const auto b = bad.verdict();
    CHECK_FALSE(b.pass);
    REQUIRE(b.violations.size() == 1);
    CHECK(b.violations[0].t == 5.0);
    CHECK(b.largest_increase == doctest::Approx(0.5));
}
