#include <doctest.h>

#include <cmath>
#include <random>

#include "sdw/errors.hpp"
#include "sdw/riemann.hpp"

using namespace sdw;

TEST_CASE("solve_riemann: converging states give the overcompressive wave") {
    const auto sol = solve_riemann(FluidState{1.0, 2.0}, FluidState{4.0, 0.0});
    REQUIRE(sol.kind == RiemannSolution::Kind::simple_sdw);
    CHECK(sol.y == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(sol.xi_rate == doctest::Approx(4.0).epsilon(1e-15));

    // Rankine-Hugoniot balance at (y, xi_rate), both components.
    const double r1 = sol.y * (4.0 - 1.0) - (4.0 * 0.0 - 1.0 * 2.0) - sol.xi_rate;
    const double r2 = sol.y * (4.0 * 0.0 - 1.0 * 2.0) - (4.0 * 0.0 - 1.0 * 4.0) -
                      sol.xi_rate * sol.y;
    CHECK(std::abs(r1) < 1e-12);
    CHECK(std::abs(r2) < 1e-12);
}

TEST_CASE("solve_riemann: equal velocities give a contact") {
    const auto sol = solve_riemann(FluidState{1.0, 1.0}, FluidState{5.0, 1.0});
    REQUIRE(sol.kind == RiemannSolution::Kind::contact);
    CHECK(sol.contact_speed == 1.0);
    CHECK_FALSE(sol.is_zero_jump());
}

TEST_CASE("solve_riemann: diverging velocities open a vacuum fan") {
    const auto sol = solve_riemann(FluidState{1.0, -1.0}, FluidState{1.0, 1.0});
    REQUIRE(sol.kind == RiemannSolution::Kind::vacuum_fan);
    CHECK(sol.fan_left == -1.0);
    CHECK(sol.fan_right == 1.0);
}

TEST_CASE("solve_riemann: identical states are a zero-jump contact") {
    const auto sol = solve_riemann(FluidState{2.0, 0.5}, FluidState{2.0, 0.5});
    CHECK(sol.is_zero_jump());
}

TEST_CASE("solve_riemann: nonpositive density rejected") {
    CHECK_THROWS_AS(solve_riemann(FluidState{0.0, 1.0}, FluidState{1.0, 0.0}),
                    PreconditionError);
}

TEST_CASE("solve_riemann: overcompressibility and positive strength rate (random)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> rho(0.05, 10.0);
    std::uniform_real_distribution<double> vel(-5.0, 5.0);
    for (int i = 0; i < 5000; ++i) {
        double ul = vel(rng), ur = vel(rng);
        if (ul < ur) std::swap(ul, ur);
        if (ul == ur) ul += 0.1;
        const FluidState l{rho(rng), ul};
        const FluidState r{rho(rng), ur};
        const auto sol = solve_riemann(l, r);
        REQUIRE(sol.kind == RiemannSolution::Kind::simple_sdw);
        CHECK(sol.y <= ul + 1e-12);
        CHECK(sol.y >= ur - 1e-12);
        CHECK(sol.xi_rate > 0.0);
        // Both Rankine-Hugoniot components balance to rounding.
        const double scale = 1e-11 * (1.0 + l.rho + r.rho) * (1.0 + ul * ul + ur * ur);
        const double r1 =
            sol.y * (r.rho - l.rho) - (r.rho * ur - l.rho * ul) - sol.xi_rate;
        const double r2 = sol.y * (r.rho * ur - l.rho * ul) -
                          (r.rho * ur * ur - l.rho * ul * ul) - sol.xi_rate * sol.y;
        CHECK(std::abs(r1) < scale);
        CHECK(std::abs(r2) < scale);
    }
}

TEST_CASE("solve_riemann: equal densities use the midpoint speed") {
    const auto sol = solve_riemann(FluidState{3.0, 1.0}, FluidState{3.0, -1.0});
    REQUIRE(sol.kind == RiemannSolution::Kind::simple_sdw);
    CHECK(sol.y == doctest::Approx(0.0));
    CHECK(sol.xi_rate == doctest::Approx(6.0));
}

TEST_CASE("vacuum_velocity: linear interpolation between the edges") {
    const auto fan = solve_riemann(FluidState{1.0, -1.0}, FluidState{1.0, 1.0});
    CHECK(vacuum_velocity(fan, 0.0, 1.0, 0.0) == doctest::Approx(0.0));
    CHECK(vacuum_velocity(fan, -1.0, 1.0, 0.0) == doctest::Approx(-1.0));

    const auto fan2 = solve_riemann(FluidState{1.0, 0.0}, FluidState{1.0, 2.0});
    CHECK(vacuum_velocity(fan2, 2.0, 2.0, 0.0) == doctest::Approx(1.0));

    CHECK_THROWS_AS(vacuum_velocity(fan, 5.0, 1.0, 0.0), PreconditionError);
}
