#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdw/config.hpp"
#include "sdw/errors.hpp"
#include "sdw/run.hpp"

using namespace sdw;

namespace {

RunConfig sample_config() {
    RunConfig c;
    c.data.left_state = FluidState{1.0, 2.0, std::nullopt};
    c.data.R = 0.0;
    c.data.x_max = 1.0;
    c.data.rho_fn = Profile::constant(1.0);
    c.data.u_fn = Profile::linear(1.0, -1.0);
    c.epsilon = 1e-3;
    c.C = 1.5;
    c.t_end = 1.0;
    c.out_dir = "out";
    c.snapshot_times = {0.5, 1.0};
    c.sample_count = 20;
    c.test_function = TestFunctionSpec{0.5, 0.5, 0.45, 0.45};
    c.l1_check = L1CheckSpec{0.5, 0.2, 0.8};
    c.gamma_horizon = 0.8;
    c.seed = 7;
    return c;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config: emit then parse round-trips") {
    const RunConfig c = sample_config();
    const auto j = config_to_json(c);
    const RunConfig back = config_from_json(j);
    CHECK(config_to_json(back) == j);
    CHECK(back.epsilon == c.epsilon);
    CHECK(back.data.u_fn.param_b() == -1.0);
    CHECK(back.test_function->radius_t == 0.45);
    CHECK(back.l1_check->a == 0.2);
}

TEST_CASE("config: every profile kind round-trips") {
    const Profile kinds[] = {
        Profile::constant(2.5),
        Profile::linear(1.0, -0.25),
        Profile::tanh_ramp(1.0, -1.0, 3.0, 0.5),
        Profile::affine_by_parts({0.0, 0.5, 0.5, 1.0}, {0.0, 1.0, 0.5, 0.25}),
        Profile::table({0.0, 0.4, 1.0}, {1.0, 2.0, 1.5}),
    };
    for (const auto& p : kinds) {
        const auto j = profile_to_json(p);
        const Profile q = profile_from_json(j);
        CHECK(profile_to_json(q) == j);
        for (int i = 0; i <= 20; ++i) {
            const double x = i / 20.0;
            CHECK(q.eval(x) == p.eval(x));
        }
    }
}

TEST_CASE("config: malformed inputs rejected") {
    ordered_json j;
    CHECK_THROWS_AS(config_from_json(j), ConfigError);
    j["initial"]["left"]["rho"] = 1.0;
    j["initial"]["left"]["u"] = 0.0;
    j["initial"]["R"] = 0.0;
    j["initial"]["x_max"] = 1.0;
    j["initial"]["rho"] = {{"name", "constant"}, {"value", 1.0}};
    j["initial"]["u"] = {{"name", "linear"}, {"a", 0.0}, {"b", 1.0}};
    CHECK_THROWS_AS(config_from_json(j), ConfigError); // missing epsilon
    j["epsilon"] = 1e-3;
    CHECK_NOTHROW(config_from_json(j));
    j["mode"] = "3x3";
    CHECK_THROWS_AS(config_from_json(j), ConfigError); // 3x3 needs an e profile
    j["mode"] = "bogus";
    CHECK_THROWS_AS(config_from_json(j), ConfigError);
}

TEST_CASE("config: tolerance override comes from the environment") {
    RunConfig c = sample_config();
    setenv("SDWTRACK_TOL_OVERRIDE", "1e-6", 1);
    c.apply_env_overrides();
    CHECK(c.tol_conservation == doctest::Approx(1e-6));
    setenv("SDWTRACK_TOL_OVERRIDE", "bogus", 1);
    CHECK_THROWS_AS(c.apply_env_overrides(), ConfigError);
    unsetenv("SDWTRACK_TOL_OVERRIDE");
}

TEST_CASE("outputs: identical configs give byte-identical files") {
    RunConfig c = sample_config();
    const auto dir = std::filesystem::temp_directory_path() / "sdw_det_test";
    std::filesystem::remove_all(dir);

    const auto out1 = run_evolve(c);
    write_snapshots_csv((dir / "a_snap.csv").string(), out1.snapshots);
    write_events_jsonl((dir / "a_events.jsonl").string(), out1.fan);
    write_conservation_csv((dir / "a_cons.csv").string(), out1.ledger);

    const auto out2 = run_evolve(c);
    write_snapshots_csv((dir / "b_snap.csv").string(), out2.snapshots);
    write_events_jsonl((dir / "b_events.jsonl").string(), out2.fan);
    write_conservation_csv((dir / "b_cons.csv").string(), out2.ledger);

    CHECK(read_file((dir / "a_snap.csv").string()) == read_file((dir / "b_snap.csv").string()));
    CHECK(read_file((dir / "a_events.jsonl").string()) ==
          read_file((dir / "b_events.jsonl").string()));
    CHECK(read_file((dir / "a_cons.csv").string()) == read_file((dir / "b_cons.csv").string()));
    CHECK(!read_file((dir / "a_events.jsonl").string()).empty());
    std::filesystem::remove_all(dir);
}

TEST_CASE("snapshots: emit then parse round-trips") {
    RunConfig c = sample_config();
    c.data.left_state.u = -0.5; // open a fan at the junction so vacuum rows appear
    c.data.u_fn = Profile::linear(0.0, 1.0);
    const auto out = run_evolve(c);
    REQUIRE(!out.snapshots.empty());
    const auto dir = std::filesystem::temp_directory_path() / "sdw_snap_rt";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "snap.csv").string();
    write_snapshots_csv(path, out.snapshots);
    const auto back = read_snapshots_csv(path);
    REQUIRE(back.size() == out.snapshots.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        const auto& a = out.snapshots[i];
        const auto& b = back[i];
        CHECK(a.t == b.t);
        REQUIRE(a.pieces.size() == b.pieces.size());
        REQUIRE(a.atoms.size() == b.atoms.size());
        for (std::size_t k = 0; k < a.pieces.size(); ++k) {
            CHECK(a.pieces[k].a == b.pieces[k].a);
            CHECK(a.pieces[k].b == b.pieces[k].b);
            CHECK(a.pieces[k].state == b.pieces[k].state);
            CHECK(a.pieces[k].vacuum == b.pieces[k].vacuum);
            if (a.pieces[k].vacuum) CHECK(a.pieces[k].fan_anchor == b.pieces[k].fan_anchor);
        }
        for (std::size_t k = 0; k < a.atoms.size(); ++k) {
            CHECK(a.atoms[k].x == b.atoms[k].x);
            CHECK(a.atoms[k].mass == b.atoms[k].mass);
            CHECK(a.atoms[k].momentum == b.atoms[k].momentum);
        }
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("run_converge: full table below the classical life span") {
    // u(x) = -x focuses at T_max = 1; an oracle comparison at t = 0.5 is valid.
    RunConfig c;
    c.data.left_state = FluidState{1.0, 0.5, std::nullopt};
    c.data.R = 0.0;
    c.data.x_max = 1.0;
    c.data.rho_fn = Profile::constant(1.0);
    c.data.u_fn = Profile::linear(0.0, -1.0);
    c.epsilon = 1e-3;
    c.C = 1.5;
    c.t_end = 0.5;
    c.test_function = TestFunctionSpec{0.3, 0.25, 0.25, 0.2};
    c.l1_check = L1CheckSpec{0.5, 0.4, 0.8};
    const auto out = run_converge(c, 3);
    CHECK(out.oracle_valid);
    REQUIRE(out.rows.size() == 3);
    for (const auto& r : out.rows) {
        CHECK(r.e1.has_value());
        CHECK(r.l1_err.has_value());
        CHECK(r.alpha.has_value());
    }
    CHECK(*out.rows[2].l1_err < *out.rows[0].l1_err);
    CHECK(out.rows[1].gamma_dist.has_value());

    // A comparison time past the life span drops the oracle column.
    RunConfig late = c;
    late.l1_check = L1CheckSpec{1.5, 0.4, 0.8};
    const auto out_late = run_converge(late, 1);
    CHECK_FALSE(out_late.oracle_valid);
    REQUIRE(out_late.rows.size() == 1);
    CHECK_FALSE(out_late.rows[0].l1_err.has_value());
    CHECK_FALSE(out_late.rows[0].gamma_dist.has_value());
}

TEST_CASE("run_evolve: conservation ledger records events and samples") {
    RunConfig c = sample_config();
    c.snapshot_times.clear();
    const auto out = run_evolve(c);
    CHECK(out.worst_mass_drift < 1e-9);
    CHECK(out.worst_momentum_drift < 1e-9);
    bool any_event = false;
    for (const auto& e : out.ledger) any_event = any_event || e.at_event;
    CHECK(any_event);
}
