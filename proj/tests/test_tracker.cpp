#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sdw/errors.hpp"
#include "sdw/riemann.hpp"
#include "sdw/tracker.hpp"

using namespace sdw;

namespace {

InitialData make_data(Profile u, double u0, double rho0 = 1.0, double x_max = 1.0,
                      Profile rho = Profile::constant(1.0)) {
    InitialData d;
    d.left_state = FluidState{rho0, u0, std::nullopt};
    d.R = 0.0;
    d.x_max = x_max;
    d.rho_fn = rho;
    d.u_fn = u;
    return d;
}

WaveFan make_fan(const InitialData& d, double eps, double C = 1.5) {
    const auto p = build_partition(d, eps, C);
    return initialize(sample_states(d, p), p);
}

} // namespace

TEST_CASE("initialize: decreasing u gives one shadow wave per junction") {
    const auto d = make_data(Profile::linear(1.0, -1.0), 2.0); // u = 1 - x, u0 = 2
    const auto fan = make_fan(d, 1e-3);
    // Ten junctions with distinct states; the constant extension past x_max
    // adds none.
    CHECK(count_fronts(fan) == 10);
    for (const auto& f : fan.fronts) CHECK_FALSE(f.curve.is_contact());
    CHECK(fan.zero_front_id == fan.fronts.front().id);
}

TEST_CASE("initialize: increasing u with small u0 has no interactions") {
    const auto d = make_data(Profile::linear(0.5, 1.0), 0.25); // u0 < u(R) = 0.5
    auto fan = make_fan(d, 1e-3);
    // Contacts and fan edges only; the event queue must be empty.
    for (const auto& f : fan.fronts) CHECK(f.curve.is_contact());
    CHECK_FALSE(peek_next_event(fan).has_value());
    run_until(fan, 10.0);
    CHECK(fan.history.empty());
}

TEST_CASE("initialize: constant data produces no fronts") {
    auto d = make_data(Profile::constant(1.0), 1.0);
    const auto fan = make_fan(d, 1e-3);
    CHECK(count_fronts(fan) == 0);
    REQUIRE(fan.regions.size() == 1);
    CHECK(fan.regions[0].state.u == 1.0);
}

TEST_CASE("run_until: t_end before the first event changes only the clock") {
    const auto d = make_data(Profile::linear(1.0, -1.0), 2.0);
    auto fan = make_fan(d, 1e-3);
    const int n0 = count_fronts(fan);
    const auto first = peek_next_event(fan);
    REQUIRE(first.has_value());
    run_until(fan, 0.5 * *first);
    CHECK(count_fronts(fan) == n0);
    CHECK(fan.t_now == doctest::Approx(0.5 * *first));
    CHECK(fan.history.empty());
}

TEST_CASE("run_until: decreasing data collapses to a single wave") {
    const auto d = make_data(Profile::linear(1.0, -1.0), 2.0);
    auto fan = make_fan(d, 1e-3);
    const int n0 = count_fronts(fan);
    run_until(fan, 100.0);
    CHECK(count_fronts(fan) == 1);
    CHECK(static_cast<int>(fan.history.size()) <= n0 - 1);
    // The survivor is the 0-SDW chain and ranges over every junction.
    CHECK(fan.fronts[0].in_zero_chain());
    CHECK(fan.fronts[0].root_right == static_cast<int>(fan.partition.cell_count()) - 1);
    // Front count decreased by participants-1 at each event.
    int count = n0;
    for (const auto& ev : fan.history) {
        count -= static_cast<int>(ev.participant_ids.size()) - 1;
    }
    CHECK(count == 1);
}

TEST_CASE("run_until: event times are nondecreasing and conservation holds") {
    const auto d = make_data(Profile::linear(1.0, -1.0), 2.0, 2.0);
    auto fan = make_fan(d, 1e-3);
    for (double t : {0.0, 0.3, 1.7, 10.0, 50.0}) {
        run_until(fan, t);
        const auto totals = conservation_totals(fan, t);
        CHECK(totals.mass_drift() < 1e-9);
        CHECK(totals.momentum_drift() < 1e-9);
    }
    double prev = 0.0;
    for (const auto& ev : fan.history) {
        CHECK(ev.T >= prev - 1e-12);
        prev = ev.T;
        // Atom mass and momentum merge exactly.
        double mass = 0.0, mom = 0.0;
        for (std::size_t k = 0; k < ev.strengths_in.size(); ++k) {
            mass += ev.strengths_in[k];
            mom += ev.strengths_in[k] * ev.speeds_in[k];
        }
        CHECK(ev.gamma_out == doctest::Approx(mass).epsilon(1e-12));
        CHECK(ev.gamma_out * ev.c0_out == doctest::Approx(mom).epsilon(1e-12));
    }
}

TEST_CASE("run_until: increasing u with u0 above the limit keeps interacting") {
    // u0 = 2 > sup u = 1: the junction wave eats every fan it reaches.
    const auto d = make_data(Profile::tanh_ramp(0.5, 0.5, 0.5, 0.15), 2.0, 1.0, 2.0);
    auto fan = make_fan(d, 1e-3);
    REQUIRE(fan.zero_front_id >= 0);
    run_until(fan, 3.0);
    CHECK(fan.history.size() > 4);
    for (const auto& ev : fan.history) {
        CHECK((ev.outcome_kind == OutcomeKind::A1 || ev.outcome_kind == OutcomeKind::A2));
    }
}

TEST_CASE("run_until: interactions stop when the wave sinks into a fan") {
    // Increasing u from ~0 to ~2 with u0 = 1 strictly between: the chain stops
    // at the junction k with u_k < u0 <= u_{k+1} and then rides the vacuum.
    const auto d = make_data(Profile::tanh_ramp(1.0, 1.0, 1.0, 0.25), 1.0, 1.0, 2.0);
    auto fan = make_fan(d, 1e-4);
    run_until(fan, 500.0);
    CHECK_FALSE(peek_next_event(fan).has_value());
    REQUIRE(!fan.history.empty());
    const auto& last = fan.history.back();
    CHECK(last.outcome_kind == OutcomeKind::A1);

    // The surviving chain front sits in a vacuum and drifts toward u0.
    const auto& zf = *std::find_if(fan.fronts.begin(), fan.fronts.end(),
                                   [](const WaveFront& f) { return f.in_zero_chain(); });
    REQUIRE_FALSE(zf.curve.is_contact());
    CHECK(zf.curve.trajectory().kind() == SdwTrajectory::Kind::right_vacuum);
    CHECK(zf.curve.limit_speed() == doctest::Approx(1.0));
    // The stopping junction k satisfies u_k < u0 <= u_{k+1}.
    const auto k = static_cast<std::size_t>(zf.root_right);
    const auto& states = fan.samples.states;
    CHECK(states[k].u < 1.0);
    CHECK(states[k + 1].u >= 1.0);
}

TEST_CASE("run_until: 3x3 mode conserves energy too") {
    auto d = make_data(Profile::linear(1.0, -1.0), 2.0);
    d.left_state.e = 1.0;
    d.e_fn = Profile::linear(0.5, 0.5);
    auto fan = make_fan(d, 1e-3);
    REQUIRE(fan.mode_3x3);
    for (double t : {0.5, 2.0, 20.0}) {
        run_until(fan, t);
        const auto totals = conservation_totals(fan, t);
        CHECK(totals.mass_drift() < 1e-9);
        CHECK(totals.momentum_drift() < 1e-9);
        CHECK(totals.energy_drift() < 1e-9);
    }
    CHECK(!fan.history.empty());
}

TEST_CASE("run_until: concurrent focusing cluster resolves in one event") {
    // Linear decreasing u on a uniform mesh focuses every interior wave at a
    // single point; the cluster must collapse them all at once.
    const auto d = make_data(Profile::linear(1.0, -1.0), 1.0); // u0 == u(R): no junction wave
    Partition p;
    p.points = {0.0, 0.25, 0.5, 0.75, 1.0};
    p.epsilon = 0.25 * 0.25 * 0.25;
    p.C = 1.0;
    auto fan = initialize(sample_states(d, p), p);
    REQUIRE(count_fronts(fan) == 4);
    run_until(fan, 2.0);
    REQUIRE(fan.history.size() == 1);
    CHECK(fan.history[0].participant_ids.size() == 4);
    CHECK(fan.history[0].T == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(count_fronts(fan) == 1);
}

TEST_CASE("run_until: wave squeezed between two fans ends double-vacuum (A4)") {
    // States (1,0) | (1,2) | (1,-2) | (1,0): a fan, a shadow wave, a fan.
    // The fan edges and the wave all meet at (x,t) = (0, 0.5).
    Partition p;
    p.points = {-1.0, 0.0, 1.0, 2.0};
    p.epsilon = 1.0;
    p.C = 1.0;
    SampledStates s;
    s.states = {FluidState{1.0, 0.0}, FluidState{1.0, 2.0}, FluidState{1.0, -2.0},
                FluidState{1.0, 0.0}};
    auto fan = initialize(s, p);
    REQUIRE(count_fronts(fan) == 5); // CD1+CD2, SDW, CD1+CD2
    run_until(fan, 2.0);
    REQUIRE(fan.history.size() == 1);
    const auto& ev = fan.history[0];
    CHECK(ev.participant_ids.size() == 3);
    CHECK(ev.outcome_kind == OutcomeKind::A4);
    CHECK(ev.T == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(ev.gamma_out == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ev.c0_out == doctest::Approx(0.0));
    // The survivor drifts at constant speed between the surviving edges.
    REQUIRE(count_fronts(fan) == 3);
    const auto& w = fan.fronts[1].curve;
    REQUIRE_FALSE(w.is_contact());
    CHECK(w.trajectory().kind() == SdwTrajectory::Kind::double_vacuum);
    CHECK(w.strength(2.0) == doctest::Approx(2.0));
    CHECK_FALSE(peek_next_event(fan).has_value());
}

TEST_CASE("run_until: outcome is insensitive to the cluster tolerance") {
    // Same-time resolution order is a convention; the merged wave must agree
    // within the clustering window across tolerance choices.
    const auto d = make_data(Profile::linear(1.0, -1.0), 2.0);
    const auto p = build_partition(d, 1e-3, 1.5);
    const auto samples = sample_states(d, p);
    auto fan_a = initialize(samples, p, 1e-9);
    auto fan_b = initialize(samples, p, 1e-6);
    run_until(fan_a, 5.0);
    run_until(fan_b, 5.0);
    REQUIRE(count_fronts(fan_a) == 1);
    REQUIRE(count_fronts(fan_b) == 1);
    const auto& wa = fan_a.fronts[0].curve;
    const auto& wb = fan_b.fronts[0].curve;
    CHECK(wa.position(5.0) == doctest::Approx(wb.position(5.0)).epsilon(1e-5));
    CHECK(wa.strength(5.0) == doctest::Approx(wb.strength(5.0)).epsilon(1e-5));
}

TEST_CASE("index_set: middle states drop out at every interaction") {
    const auto d = make_data(Profile::linear(1.0, -1.0), 2.0);
    auto fan = make_fan(d, 1e-3);
    auto idx = fan.index_set();
    // Initially every sampled state survives.
    REQUIRE(idx.size() == fan.samples.states.size());
    for (std::size_t k = 0; k < idx.size(); ++k) CHECK(idx[k] == static_cast<int>(k));
    std::size_t prev = idx.size();
    for (;;) {
        const auto tn = peek_next_event(fan);
        if (!tn) break;
        run_until(fan, *tn);
        const auto next = fan.index_set();
        CHECK(next.size() < prev);
        // Still increasing and a subset of the initial index range.
        for (std::size_t k = 1; k < next.size(); ++k) CHECK(next[k] > next[k - 1]);
        prev = next.size();
    }
    // Terminal fan: the left state and the rightmost cell remain.
    const auto final_idx = fan.index_set();
    REQUIRE(final_idx.size() == 2);
    CHECK(final_idx[0] == 0);
    CHECK(final_idx[1] == static_cast<int>(fan.samples.states.size()) - 1);
}

TEST_CASE("count_fronts bookkeeping") {
    const auto d = make_data(Profile::linear(1.0, -1.0), 2.0);
    auto fan = make_fan(d, 1e-3);
    const int n0 = count_fronts(fan);
    const auto first = peek_next_event(fan);
    REQUIRE(first.has_value());
    run_until(fan, *first);
    CHECK(count_fronts(fan) <=
          n0 - static_cast<int>(fan.history.front().participant_ids.size()) + 1);
}
