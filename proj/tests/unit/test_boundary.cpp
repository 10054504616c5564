#include <doctest.h>

#include <cmath>
#include <random>

#include "enskog/boundary.hpp"
#include "enskog/distribution.hpp"

using namespace enskog;

namespace {

const WallSpec kKernels[] = {
    {WallKernelKind::Diffuse, 1.0, 1.0, 1.0},
    {WallKernelKind::Maxwell, 0.3, 1.0, 1.0},
    {WallKernelKind::CercignaniLampis, 1.0, 0.5, 1.5},
    {WallKernelKind::CercignaniLampis, 1.0, 1.0, 1.0},
};

}  // namespace

TEST_CASE("kernel columns are probability distributions") {
    VelocityGrid vg(5.0, 10);
    for (const auto& spec : kKernels) {
        for (auto side : {WallSide::Left, WallSide::Right}) {
            WallKernel k(vg, spec, 1.3, 1.0, side);
            CHECK(k.normalization_error() <= 1e-12);
            CHECK(k.equilibrium_error() <= 1e-12);
            for (int e : k.emitted()) CHECK(k.normal_velocity(e) > 0.0);
            for (int i : k.impinging()) {
                CHECK(k.normal_velocity(i) < 0.0);
                for (int e : k.emitted()) CHECK(k.reflection_probability(e, i) >= 0.0);
            }
        }
    }
}

TEST_CASE("full accommodation CL equals the diffuse kernel") {
    VelocityGrid vg(5.0, 8);
    WallKernel cl(vg, {WallKernelKind::CercignaniLampis, 1.0, 1.0, 1.0}, 1.0, 1.0, WallSide::Left);
    WallKernel d(vg, {}, 1.0, 1.0, WallSide::Left);
    for (int e : d.emitted())
        for (int i : d.impinging())
            CHECK(cl.reflection_probability(e, i) == doctest::Approx(d.reflection_probability(e, i)).epsilon(1e-10));
}

TEST_CASE("specular limit of the Maxwell kernel mirrors the gas") {
    VelocityGrid vg(5.0, 8);
    WallKernel k(vg, {WallKernelKind::Maxwell, 1e-12, 1.0, 1.0}, 1.0, 1.0, WallSide::Right);
    std::vector<double> wall(static_cast<std::size_t>(vg.size()), 0.0);
    for (int i : k.impinging()) wall[static_cast<std::size_t>(i)] = maxwellian(1.0, {0.2, 0.1, 0.0}, 1.4, 1.0, vg.node(i));
    k.reflect(wall);
    for (int e : k.emitted())
        CHECK(wall[static_cast<std::size_t>(e)] == doctest::Approx(wall[static_cast<std::size_t>(vg.mirror_x(e))]).epsilon(1e-9));
}

TEST_CASE("entropy flux is non-positive and vanishes at the wall Maxwellian") {
    VelocityGrid vg(5.0, 10);
    const auto fw = unit_maxwellian_nodes(vg, 1.0, 1.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (const auto& spec : kKernels) {
        for (auto side : {WallSide::Left, WallSide::Right}) {
            WallKernel k(vg, spec, 1.0, 1.0, side);
            CHECK(std::abs(dg_boundary_flux(vg, fw, 1.0, 1.0, side)) <= 1e-14);
            for (int s = 0; s < 20; ++s) {
                std::vector<double> wall(static_cast<std::size_t>(vg.size()), 0.0);
                for (int i : k.impinging()) wall[static_cast<std::size_t>(i)] = fw[static_cast<std::size_t>(i)] * u(rng);
                k.reflect(wall);
                CHECK(dg_boundary_flux(vg, wall, 1.0, 1.0, side) <= 1e-12);
            }
        }
    }
}

TEST_CASE("invalid parameters and inputs are rejected") {
    CHECK_THROWS(validate({WallKernelKind::Maxwell, 0.0, 1.0, 1.0}));
    CHECK_THROWS(validate({WallKernelKind::CercignaniLampis, 1.0, 0.0, 1.0}));
    CHECK_THROWS(validate({WallKernelKind::CercignaniLampis, 1.0, 1.0, 2.0}));
    VelocityGrid vg(5.0, 8);
    WallKernel k(vg, {}, 1.0, 1.0, WallSide::Left);
    std::vector<double> wall(static_cast<std::size_t>(vg.size()), 1.0);
    wall[static_cast<std::size_t>(k.impinging().front())] = -1.0;
    CHECK_THROWS(k.reflect(wall));
    CHECK_THROWS(dg_boundary_flux(vg, wall, 1.0, 1.0, WallSide::Left));
}

TEST_CASE("sinkhorn balancing reaches both marginals") {
    const int n = 4;
    std::vector<double> k{1, 2, 3, 4, 2, 1, 1, 1, 5, 1, 2, 1, 1, 1, 1, 3};
    std::vector<double> b{0.1, 0.2, 0.3, 0.4};
    sinkhorn_balance(k, b, n);
    for (int r = 0; r < n; ++r) {
        double row = 0.0, col = 0.0;
        for (int c = 0; c < n; ++c) {
            row += k[static_cast<std::size_t>(r * n + c)];
            col += k[static_cast<std::size_t>(c * n + r)];
        }
        CHECK(row == doctest::Approx(b[static_cast<std::size_t>(r)]).epsilon(1e-12));
        CHECK(col == doctest::Approx(b[static_cast<std::size_t>(r)]).epsilon(1e-12));
    }
}
