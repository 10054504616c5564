#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "enskog/collision.hpp"
#include "enskog/verify.hpp"

using namespace enskog;

namespace {

PhaseSpacePtr grid(int cells, int nv, double xi_max) {
    return std::make_shared<PhaseSpace>(SpatialGrid(1.0, cells), VelocityGrid(xi_max, nv));
}

CollisionOperator full(const PhaseSpacePtr& ps, double sigma, int order) {
    CollisionSettings s;
    s.mode = CollisionMode::FullQuadrature;
    s.sphere_order = order;
    return CollisionOperator(ps, {sigma, 1.0, 1.0}, {}, s);
}

double mixture(const Vec3& xi) {
    return maxwellian(0.6, {}, 0.7, 1.0, xi) + maxwellian(0.4, {0.3, 0.0, 0.0}, 1.6, 1.0, xi);
}

}  // namespace

TEST_CASE("uniform Maxwellian: gain equals loss at every node") {
    auto ps = grid(3, 8, 5.0);
    auto op = full(ps, 0.05, 8);
    std::vector<double> rho(3, 2.0), u(3, 0.0), t(3, 1.0);
    const auto f = make_local_maxwellian(ps, rho, u, t, 1.0);
    const auto g = op.correlation_for(f);
    std::vector<double> gain, loss;
    op.gain_loss(f, g, gain, loss);
    double scale = 0.0;
    for (double v : loss) scale = std::max(scale, v);
    for (int n = 0; n < ps->velocity.size(); ++n) {
        const auto i = static_cast<std::size_t>(ps->velocity.size() + n);
        CHECK(std::abs(gain[i] - loss[i]) <= 1e-12 * scale);
    }
}

TEST_CASE("uniform Maxwellian: loss rate is isotropic") {
    auto ps = grid(3, 8, 5.0);
    auto op = full(ps, 0.05, 8);
    std::vector<double> rho(3, 1.0), u(3, 0.0), t(3, 1.0);
    const auto f = make_local_maxwellian(ps, rho, u, t, 1.0);
    const auto g = op.correlation_for(f);
    const auto& vg = ps->velocity;
    for (int n = 0; n < vg.size(); n += 7) {
        const auto ijk = vg.indices(n);
        const double r = op.loss(f, g, 1, n) / f.at(1, n);
        const int swapped = vg.index(ijk[1], ijk[2], ijk[0]);
        CHECK(op.loss(f, g, 1, swapped) / f.at(1, swapped) == doctest::Approx(r).epsilon(1e-3));
        CHECK(op.loss(f, g, 1, vg.negate(n)) / f.at(1, vg.negate(n)) == doctest::Approx(r).epsilon(1e-3));
    }
}

TEST_CASE("operator is quadratic before the projection") {
    auto ps = grid(4, 6, 4.0);
    auto op = full(ps, 0.1, 6);
    const auto f = random_smooth_state(ps, 3, 1.0, 1.0);
    Distribution f2(ps);
    for (std::size_t i = 0; i < f.data().size(); ++i) f2.data()[i] = 2.5 * f.data()[i];
    std::vector<double> g1, l1, g2, l2;
    op.gain_loss(f, op.correlation_for(f), g1, l1);
    op.gain_loss(f2, op.correlation_for(f2), g2, l2);
    for (std::size_t i = 0; i < g1.size(); ++i) {
        CHECK(g2[i] == doctest::Approx(6.25 * g1[i]).epsilon(1e-12));
        CHECK(l2[i] == doctest::Approx(6.25 * l1[i]).epsilon(1e-12));
    }
}

TEST_CASE("projection removes the mass moment in every cell") {
    auto ps = grid(4, 6, 4.0);
    for (auto mode : {CollisionMode::FullQuadrature, CollisionMode::SeededMC}) {
        CollisionSettings s;
        s.mode = mode;
        s.sphere_order = 6;
        s.samples = 8;
        CollisionOperator op(ps, {0.1, 1.0, 1.0}, {}, s);
        const auto f = random_smooth_state(ps, 4, 1.0, 1.0);
        const auto res = op.apply(f);
        for (double m : op.moment_of_J(res.j, Moment::Mass)) CHECK(std::abs(m) <= 1e-13 * res.max_abs_j);
    }
}

TEST_CASE("seeded MC draws are frozen and reproducible") {
    auto ps = grid(4, 6, 4.0);
    CollisionSettings s;
    s.samples = 8;
    s.seed = 11;
    CollisionOperator a(ps, {0.1, 1.0, 1.0}, {}, s), b(ps, {0.1, 1.0, 1.0}, {}, s);
    const auto f = random_smooth_state(ps, 5, 1.0, 1.0);
    CHECK(a.apply(f).j == b.apply(f).j);
    CHECK(a.apply(f).j == a.apply(f).j);
}

TEST_CASE("gain of a two-temperature mixture against an independent MC estimate") {
    // One wide cell, so that the shifts stay inside a spatially uniform gas.
    // Grids with 16 and 48 nodes per axis share the nodes below; the discrete gain is
    // second order in the spacing, so the Richardson value must match the MC estimate.
    struct Level {
        PhaseSpacePtr ps;
        Distribution f;
    };
    auto level = [](int nv) {
        auto ps = grid(1, nv, 6.0);
        Distribution f(ps);
        for (int n = 0; n < ps->velocity.size(); ++n) f.at(0, n) = mixture(ps->velocity.node(n));
        return Level{ps, f};
    };
    Level coarse = level(16), fine = level(48);
    auto op_c = full(coarse.ps, 0.01, 16);
    auto op_f = full(fine.ps, 0.01, 16);
    const auto g_c = op_c.correlation_for(coarse.f);
    const auto g_f = op_f.correlation_for(fine.f);
    const double s2 = 0.01 * 0.01;

    std::mt19937_64 rng(42);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sd = 1.3;  // proposal for xi*
    const int samples = 400000;
    for (auto [i, j, k] : {std::array{8, 8, 8}, std::array{11, 7, 9}, std::array{4, 9, 10}}) {
        const int nc = coarse.ps->velocity.index(i, j, k);
        const int nf = fine.ps->velocity.index(3 * i + 1, 3 * j + 1, 3 * k + 1);
        const Vec3 xi = coarse.ps->velocity.node(nc);
        REQUIRE(norm2(xi - fine.ps->velocity.node(nf)) < 1e-24);
        double sum = 0.0, sum2 = 0.0;
        for (int s = 0; s < samples; ++s) {
            const Vec3 xs{sd * normal(rng), sd * normal(rng), sd * normal(rng)};
            Vec3 a{normal(rng), normal(rng), normal(rng)};
            a = a * (1.0 / std::sqrt(norm2(a)));
            const double v = dot(xs - xi, a);
            double val = 0.0;
            if (v > 0.0) {
                const double p = std::exp(-0.5 * norm2(xs) / (sd * sd)) / std::pow(2.0 * kPi * sd * sd, 1.5);
                val = s2 * v * mixture(xi + a * v) * mixture(xs - a * v) * 4.0 * kPi / p;
            }
            sum += val;
            sum2 += val * val;
        }
        const double mean = sum / samples;
        const double se = std::sqrt((sum2 / samples - mean * mean) / (samples - 1));
        const double gc = op_c.gain(coarse.f, g_c, 0, nc);
        const double gf = op_f.gain(fine.f, g_f, 0, nf);
        const double extrapolated = (9.0 * gf - gc) / 8.0;
        INFO("node " << i << "," << j << "," << k << " coarse " << gc << " fine " << gf << " extrapolated "
                     << extrapolated << " mc " << mean << " +- " << se);
        CHECK(std::abs(gf - mean) < std::abs(gc - mean));
        CHECK(std::abs(extrapolated - mean) <= 3.0 * se);
    }
}
