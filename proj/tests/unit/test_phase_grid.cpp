#include <doctest.h>

#include <cmath>

#include "enskog/phase_grid.hpp"

using namespace enskog;

TEST_CASE("spatial grid centres and spacing") {
    SpatialGrid g(2.0, 8);
    CHECK(g.dx() == doctest::Approx(0.25));
    CHECK(g.center(0) == doctest::Approx(0.125));
    CHECK(g.center(7) == doctest::Approx(1.875));
    CHECK_THROWS(SpatialGrid(0.0, 4));
    CHECK_THROWS(SpatialGrid(1.0, 0));
}

TEST_CASE("velocity grid layout") {
    VelocityGrid v(3.0, 6);
    CHECK(v.size() == 216);
    CHECK(v.weight() == doctest::Approx(1.0));
    double sum = 0.0;
    for (int n = 0; n < v.size(); ++n) sum += v.weight();
    CHECK(sum == doctest::Approx(216.0));
    for (int n = 0; n < v.size(); ++n) {
        const int m = v.mirror_x(n);
        CHECK(v.node(m).x == doctest::Approx(-v.node(n).x));
        CHECK(v.node(m).y == v.node(n).y);
        const int q = v.negate(n);
        CHECK(v.node(q).z == doctest::Approx(-v.node(n).z));
    }
    const auto idx = v.indices(v.index(1, 2, 3));
    CHECK(idx[0] == 1);
    CHECK(idx[1] == 2);
    CHECK(idx[2] == 3);
    CHECK_THROWS(VelocityGrid(3.0, 7));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(5, x, w);
    double s0 = 0.0, s8 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s0 += w[i];
        s8 += w[i] * std::pow(x[i], 8);
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("sphere quadrature moments and antipodes") {
    for (int order : {4, 6, 8, 16}) {
        SphereQuadrature s(order);
        double area = 0.0, xx = 0.0, yy = 0.0, x4 = 0.0;
        for (int q = 0; q < s.size(); ++q) {
            const Vec3& a = s.node(q);
            CHECK(norm2(a) == doctest::Approx(1.0));
            area += s.weight(q);
            xx += s.weight(q) * a.x * a.x;
            yy += s.weight(q) * a.y * a.y;
            if (order >= 6) x4 += s.weight(q) * std::pow(a.x, 4);
            const Vec3& b = s.node(s.antipode(q));
            CHECK(b.x == doctest::Approx(-a.x));
            CHECK(b.y == doctest::Approx(-a.y));
            CHECK(s.weight(s.antipode(q)) == s.weight(q));
        }
        CHECK(area == doctest::Approx(4.0 * kPi).epsilon(1e-13));
        CHECK(xx == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
        CHECK(yy == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
        if (order >= 6) CHECK(x4 == doctest::Approx(4.0 * kPi / 5.0).epsilon(1e-13));
    }
    CHECK_THROWS(SphereQuadrature(7));
}

TEST_CASE("shift stencil clamps inside the slab and vanishes outside") {
    SpatialGrid g(1.0, 4);
    std::vector<double> f{1.0, 2.0, 3.0, 4.0};
    CHECK(make_stencil(g, 0.05).apply(f) == doctest::Approx(1.0));
    CHECK(make_stencil(g, 0.5).apply(f) == doctest::Approx(2.5));
    CHECK(make_stencil(g, 0.99).apply(f) == doctest::Approx(4.0));
    CHECK(make_stencil(g, -0.01).apply(f) == 0.0);
    CHECK(make_stencil(g, 1.01).apply(f) == 0.0);
    CHECK(shifted_value(g, f, 0.375, 0.25) == doctest::Approx(3.0));
}
