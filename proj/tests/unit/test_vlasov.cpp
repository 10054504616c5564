#include <doctest.h>

#include <cmath>
#include <random>

#include "enskog/vlasov.hpp"

using namespace enskog;

namespace {

VlasovSettings weak() { return {true, 0.01, 6.0, 0.1}; }

}  // namespace

TEST_CASE("slab kernel matches direct integration of the pair potential") {
    SpatialGrid grid(1.0, 8);
    VlasovField v(grid, weak(), 1.0);
    for (double s : {0.0, 0.05, 0.1, 0.13, 0.4}) {
        // 2 pi int_s^inf Phi(r) r dr with r = s + t/(1 - t)
        const int n = 200000;
        double sum = 0.0;
        const double a = std::abs(s);
        for (int i = 0; i < n; ++i) {
            const double t = (i + 0.5) / n;
            const double r = a + t / (1.0 - t);
            sum += v.phi(r) * r / ((1.0 - t) * (1.0 - t)) / n;
        }
        CHECK(v.slab_kernel(s) == doctest::Approx(2.0 * kPi * sum).epsilon(1e-5));
        CHECK(v.slab_kernel(-s) == v.slab_kernel(s));
    }
}

TEST_CASE("cell pair matrix integrates constant and linear kernels exactly") {
    SpatialGrid grid(1.0, 5);
    const double kinks[] = {0.0};
    const auto one = cell_pair_matrix(grid, [](double) { return 1.0; }, kinks);
    for (double p : one) CHECK(p == doctest::Approx(grid.dx() * grid.dx()));
    const auto absk = cell_pair_matrix(grid, [](double s) { return std::abs(s); }, kinks);
    // diagonal: int int |x - y| over a cell = dx^3 / 3
    CHECK(absk[0] == doctest::Approx(std::pow(grid.dx(), 3) / 3.0));
    CHECK(absk[2] == doctest::Approx(2.0 * std::pow(grid.dx(), 3)));
}

TEST_CASE("force is antisymmetric and attractive") {
    SpatialGrid grid(1.0, 16);
    VlasovField v(grid, weak(), 1.0);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(500.0, 3000.0);
    std::vector<double> rho(16);
    for (double& r : rho) r = u(rng);
    const auto f = v.force(rho);
    double self = 0.0, scale = 0.0;
    for (int k = 0; k < 16; ++k) {
        self += rho[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(k)];
        scale += std::abs(rho[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(k)]);
    }
    CHECK(std::abs(self) <= 1e-13 * scale);

    std::vector<double> lump(16, 0.0);
    lump[12] = 1000.0;
    const auto fl = v.force(lump);
    CHECK(fl[8] > 0.0);
    CHECK(fl[15] < 0.0);
}

TEST_CASE("potential energy is negative and above its lower bound") {
    SpatialGrid grid(1.0, 16);
    VlasovField v(grid, weak(), 1.0);
    std::vector<double> rho(16, 2250.0);
    const double e = v.potential_energy(rho);
    CHECK(e < 0.0);
    double mass = 0.0;
    for (double r : rho) mass += r * grid.dx();
    CHECK(e >= 0.5 * v.min_pair_integral() * std::pow(mass / grid.dx(), 2));
    CHECK(v.phi_min() == doctest::Approx(-0.01));
    CHECK_THROWS(VlasovField(grid, {true, 0.01, 2.0, 0.1}, 1.0));
    CHECK_THROWS(VlasovField(grid, {true, 0.01, 6.0, 0.0}, 1.0));
}

TEST_CASE("force transport keeps mass and gives the momentum F rho dt") {
    auto ps = std::make_shared<PhaseSpace>(SpatialGrid(1.0, 2), VelocityGrid(7.0, 24));
    std::vector<double> rho{1.0, 2.0}, u{0.0, 0.0}, t{1.0, 1.0};
    auto f = make_local_maxwellian(ps, rho, u, t, 1.0);
    VlasovField v(ps->space, weak(), 1.0);
    const double rate = v.transport_rate(1.0, 1.0, ps->velocity);
    const std::vector<double> force{0.4, -0.7};
    const double dt = 0.2 / (rate * 0.7);
    const auto before = f.data();
    v.transport(f, force, dt, 1.0, 1.0);
    const auto& vg = ps->velocity;
    for (int k = 0; k < 2; ++k) {
        double m0 = 0.0, m1 = 0.0, p = 0.0;
        for (int n = 0; n < vg.size(); ++n) {
            const auto i = static_cast<std::size_t>(k * vg.size() + n);
            m0 += before[i] * vg.weight();
            m1 += f.data()[i] * vg.weight();
            p += (f.data()[i] - before[i]) * vg.node(n).x * vg.weight();
            CHECK(f.data()[i] >= 0.0);
        }
        CHECK(m1 == doctest::Approx(m0).epsilon(1e-14));
        CHECK(p == doctest::Approx(force[static_cast<std::size_t>(k)] * rho[static_cast<std::size_t>(k)] * dt).epsilon(1e-3));
    }
}
