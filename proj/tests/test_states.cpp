#include <doctest.h>

#include <cmath>
#include <random>

#include "sdw/errors.hpp"
#include "sdw/states.hpp"

using namespace sdw;

namespace {

InitialData linear_data(double u0 = 2.0) {
    InitialData d;
    d.left_state = FluidState{1.0, u0, std::nullopt};
    d.R = 0.0;
    d.x_max = 1.0;
    d.rho_fn = Profile::constant(1.0);
    d.u_fn = Profile::linear(0.0, 1.0); // u(x) = x
    return d;
}

} // namespace

TEST_CASE("build_partition: equidistant cube-root spacing") {
    const auto p = build_partition(linear_data(), 1e-3, 1.5);
    REQUIRE(p.points.size() == 11);
    for (int i = 0; i <= 10; ++i) {
        CHECK(p.points[static_cast<std::size_t>(i)] == doctest::Approx(0.1 * i).epsilon(1e-14));
    }
    CHECK(p.spacing_lower() == doctest::Approx(0.1));
}

TEST_CASE("build_partition: extremum snap keeps the spacing bounds") {
    InitialData d = linear_data();
    d.u_fn = Profile::affine_by_parts({0.0, 0.25, 1.0}, {0.0, 1.0, 0.0});
    const auto p = build_partition(d, 1e-3, 1.5);
    bool found = false;
    for (double y : p.points) {
        if (y == 0.25) found = true;
    }
    CHECK(found);
    const double h = std::cbrt(1e-3);
    for (std::size_t i = 1; i < p.points.size(); ++i) {
        const double dy = p.points[i] - p.points[i - 1];
        CHECK(dy >= h - 1e-14);
        CHECK(dy <= 1.5 * h + 1e-14);
    }
}

TEST_CASE("build_partition: epsilon larger than the window fails") {
    CHECK_THROWS_AS(build_partition(linear_data(), 8.0, 1.5), PreconditionError);
    CHECK_THROWS_AS(build_partition(linear_data(), -1.0, 1.5), ConfigError);
    InitialData bad = linear_data();
    bad.x_max = bad.R;
    CHECK_THROWS_AS(build_partition(bad, 1e-3, 1.5), ConfigError);
}

TEST_CASE("build_partition: C too small for an uneven window fails") {
    InitialData d = linear_data();
    d.x_max = 1.05; // 10.5 cells of cbrt(1e-3): needs dY = 0.105 > C h for C = 1
    CHECK_THROWS_AS(build_partition(d, 1e-3, 1.0), ConfigError);
    const auto p = build_partition(d, 1e-3, 1.1);
    p.validate_spacing();
    CHECK(p.points.back() == 1.05);
}

TEST_CASE("build_partition: spacing bounds hold for random epsilon and C") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> eps_dist(-6.0, -2.0);
    std::uniform_real_distribution<double> c_dist(1.2, 3.0);
    std::uniform_real_distribution<double> x_dist(0.05, 0.95);
    for (int trial = 0; trial < 200; ++trial) {
        InitialData d = linear_data();
        const double eps = std::pow(10.0, eps_dist(rng));
        const double c = c_dist(rng);
        const int n_ext = trial % 3;
        std::vector<double> nodes{0.0};
        std::vector<double> vals{0.0};
        double x = 0.0;
        for (int k = 0; k < n_ext; ++k) {
            x = x_dist(rng);
            nodes.push_back(x);
            vals.push_back((k % 2 == 0) ? 1.0 : -1.0);
        }
        nodes.push_back(1.0);
        vals.push_back(0.5);
        std::sort(nodes.begin(), nodes.end());
        d.u_fn = Profile::affine_by_parts(nodes, vals);
        Partition p;
        try {
            p = build_partition(d, eps, c);
        } catch (const std::exception&) {
            continue; // extrema too close for this epsilon; rejection is fine
        }
        const double h = std::cbrt(eps);
        for (std::size_t i = 1; i < p.points.size(); ++i) {
            const double dy = p.points[i] - p.points[i - 1];
            CHECK(dy >= h * (1.0 - 1e-12));
            CHECK(dy <= c * h * (1.0 + 1e-12));
        }
        CHECK(p.points.front() == 0.0);
        CHECK(p.points.back() == 1.0);
    }
}

TEST_CASE("sample_states: right-endpoint evaluation") {
    InitialData d = linear_data();
    Partition p;
    p.points = {0.0, 0.5, 1.0};
    p.epsilon = 0.125;
    p.C = 1.0;
    const auto s = sample_states(d, p);
    REQUIRE(s.states.size() == 3);
    CHECK(s.states[0].rho == 1.0);
    CHECK(s.states[0].u == 2.0);
    CHECK(s.states[1].rho == 1.0);
    CHECK(s.states[1].u == doctest::Approx(0.5));
    CHECK(s.states[2].u == doctest::Approx(1.0));
}

TEST_CASE("sample_states: affine data example") {
    InitialData d = linear_data();
    d.rho_fn = Profile::linear(1.0, 1.0); // 1 + x
    d.u_fn = Profile::linear(0.0, -1.0);  // -x
    Partition p;
    p.points = {0.0, 0.5, 1.0};
    p.epsilon = 0.125;
    p.C = 1.0;
    const auto s = sample_states(d, p);
    CHECK(s.states[1].rho == doctest::Approx(1.5));
    CHECK(s.states[1].u == doctest::Approx(-0.5));
    CHECK(s.states[2].rho == doctest::Approx(2.0));
    CHECK(s.states[2].u == doctest::Approx(-1.0));
}

TEST_CASE("sample_states: constant data gives equal states and is idempotent") {
    InitialData d = linear_data(1.0);
    d.u_fn = Profile::constant(1.0);
    const auto p = build_partition(d, 1e-3, 1.5);
    const auto s1 = sample_states(d, p);
    const auto s2 = sample_states(d, p);
    REQUIRE(s1.states.size() == s2.states.size());
    for (std::size_t i = 0; i < s1.states.size(); ++i) {
        CHECK(s1.states[i] == s2.states[i]);
        CHECK(s1.states[i] == s1.states[0]);
    }
}

TEST_CASE("sample_states: nonpositive density rejected") {
    InitialData d = linear_data();
    d.rho_fn = Profile::linear(0.5, -1.0); // negative past x = 0.5
    const auto p = build_partition(d, 1e-3, 1.5);
    CHECK_THROWS_AS(sample_states(d, p), ConfigError);
}

TEST_CASE("profiles: tanh ramp and table evaluation") {
    const auto ramp = Profile::tanh_ramp(1.0, 1.0, 0.5, 0.1);
    CHECK(ramp.eval(0.5) == doctest::Approx(1.0));
    CHECK(ramp.eval(10.0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(ramp.deriv(0.5) == doctest::Approx(10.0));

    const auto tab = Profile::table({0.0, 0.5, 1.0}, {1.0, 2.0, 4.0});
    CHECK(tab.eval(0.0) == doctest::Approx(1.0));
    CHECK(tab.eval(0.5) == doctest::Approx(2.0));
    CHECK(tab.eval(1.0) == doctest::Approx(4.0));
    // Monotone data: interpolant stays within the data range.
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        CHECK(tab.eval(x) >= 1.0 - 1e-12);
        CHECK(tab.eval(x) <= 4.0 + 1e-12);
    }
}
