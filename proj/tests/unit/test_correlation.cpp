#include <doctest.h>

#include <cmath>

#include "enskog/config_oracle.hpp"
#include "enskog/correlation.hpp"

using namespace enskog;

TEST_CASE("carnahan-starling contact value") {
    CHECK(cs_contact_value(0.0) == 1.0);
    CHECK(cs_contact_value(0.2) == doctest::Approx(1.7578125).epsilon(1e-15));
    CHECK(cs_contact_value(0.5) == doctest::Approx(6.0));
    CHECK_THROWS_AS(cs_contact_value(0.64), DomainError);
    CHECK_THROWS_AS(cs_contact_value(-0.1), DomainError);
    CHECK(packing_fraction(6.0 / kPi, 1.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("excess free energy integrates the contact value") {
    // psi(eta) = int_0^eta 4 g(s) ds, midpoint rule
    const double eta = 0.3;
    const int n = 20000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = (i + 0.5) * eta / n;
        sum += 4.0 * cs_contact_value(s) * eta / n;
    }
    CHECK(cs_excess_free_energy(eta) == doctest::Approx(sum).epsilon(1e-8));
}

TEST_CASE("pair correlation models on the slab") {
    SpatialGrid grid(1.0, 8);
    GasProperties gas{0.05, 1.0, 1.0};
    std::vector<double> rho(8);
    for (int k = 0; k < 8; ++k) rho[static_cast<std::size_t>(k)] = 1000.0 + 200.0 * k;

    PairCorrelation unity({}, grid, rho, gas);
    CHECK(unity(0.2, 0.25) == 1.0);
    CHECK(unity(-0.01, 0.02) == 0.0);
    CHECK(unity(0.99, 1.02) == 0.0);

    CorrelationModel cs;
    cs.kind = CorrelationKind::ContactCS;
    PairCorrelation g(cs, grid, rho, gas);
    const double mid = make_stencil(grid, 0.5).apply(rho);
    CHECK(g(0.45, 0.55) == doctest::Approx(cs_contact_value(packing_fraction(mid, gas.sigma, gas.mass))));
    CHECK(g(0.3, 0.35) == g(0.35, 0.3));

    std::vector<double> packed(8, 1e5);
    CHECK_THROWS_AS(PairCorrelation(cs, grid, packed, {0.5, 1.0, 1.0}), DomainError);
}

TEST_CASE("oracle reproduces its own density and is symmetric") {
    OracleBox box{1.0, 1.0, 1.0, true};
    SpatialGrid grid(1.0, 8);
    ConfigOracle oracle(box, grid, 3, 0.15, 1.0, 4000, 3);
    std::vector<double> rho(8);
    double total = 0.0;
    for (int k = 0; k < 8; ++k) {
        rho[static_cast<std::size_t>(k)] = 1.0 + 0.5 * grid.center(k);
        total += rho[static_cast<std::size_t>(k)] * grid.dx();
    }
    for (double& r : rho) r *= 3.0 / total;
    const auto st = oracle.invert_density_to_w(rho, 1e-6);
    for (int k = 0; k < 8; ++k) CHECK(st.rho[static_cast<std::size_t>(k)] == doctest::Approx(rho[static_cast<std::size_t>(k)]).epsilon(1e-6));
    double wsum = 0.0;
    for (double w : st.w_x) wsum += w * grid.dx();
    CHECK(wsum == doctest::Approx(1.0));

    const Vec3 a{0.3, 0.5, 0.5}, b{0.42, 0.55, 0.5};
    const auto gab = oracle.exact_g2(st, a, b);
    const auto gba = oracle.exact_g2(st, b, a);
    CHECK(std::abs(gab.value - gba.value) <= 3.0 * std::hypot(gab.std_error, gba.std_error));
    CHECK(gab.std_error > 0.0);
}

TEST_CASE("oracle rejects inconsistent input") {
    OracleBox box{1.0, 1.0, 1.0, true};
    SpatialGrid grid(1.0, 4);
    ConfigOracle oracle(box, grid, 2, 0.1, 1.0, 100, 1);
    std::vector<double> rho(4, 1.0);
    CHECK_THROWS(oracle.invert_density_to_w(rho, 1e-3));
    CHECK_THROWS(ConfigOracle(box, grid, 2, 0.6, 1.0, 100, 1));
    const auto st = oracle.state_from_w({0.0, 1.0, 1.0, 0.0});
    CHECK_THROWS_AS(oracle.exact_g2(st, {0.0, 0.5, 0.5}, {0.5, 0.5, 0.5}), UndefinedCorrelation);
}

TEST_CASE("identical seeds give identical estimates") {
    OracleBox box{1.0, 1.0, 1.0, true};
    SpatialGrid grid(1.0, 4);
    ConfigOracle a(box, grid, 3, 0.1, 1.0, 500, 9), b(box, grid, 3, 0.1, 1.0, 500, 9);
    std::vector<double> w{1.0, 1.2, 1.4, 1.6};
    CHECK(a.config_phi(w).value == b.config_phi(w).value);
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}
