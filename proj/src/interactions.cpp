#include "sdw/interactions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdw/errors.hpp"
#include "sdw/riemann.hpp"
#include "sdw/roots.hpp"

namespace sdw {

namespace {

// Monotone speed range of a front from time t onward: u_s runs from its
// current value to its limit without overshooting.
struct SpeedRange {
    double lo, hi;
};

SpeedRange future_speed_range(const FrontCurve& f, double t) {
    const double now = f.speed(t);
    const double lim = f.limit_speed();
    return {std::min(now, lim), std::max(now, lim)};
}

} // namespace

std::optional<Crossing> next_crossing(const FrontCurve& left_front,
                                      const FrontCurve& right_front,
                                      double t_now,
                                      double horizon) {
    const auto gap = [&](double t) {
        return right_front.position(t) - left_front.position(t);
    };

    // Straight-line pair: the crossing is a linear solve. A zero gap with a
    // nonnegative opening rate is a birth-point touch, not an interaction.
    if (left_front.is_straight() && right_front.is_straight()) {
        const double g0 = gap(t_now);
        const double rate = right_front.speed(t_now) - left_front.speed(t_now);
        if (rate >= 0.0) {
            if (g0 >= 0.0) return std::nullopt;
            return Crossing{t_now, left_front.position(t_now)};
        }
        if (g0 <= 0.0) return Crossing{t_now, left_front.position(t_now)};
        const double t = t_now - g0 / rate;
        if (t > horizon) return std::nullopt;
        return Crossing{t, left_front.position(t)};
    }

    const double scan_cap = std::min(horizon, t_now + 1e7 * (1.0 + std::abs(t_now)));
    const double limit_closing = right_front.limit_speed() - left_front.limit_speed();

    double t = t_now;
    double g = gap(t);
    const auto touch_tol = [&](double at) { return 1e-13 * (1.0 + std::abs(at)); };

    for (int it = 0; it < 100000; ++it) {
        if (g <= touch_tol(t)) {
            const double closing = right_front.speed(t) - left_front.speed(t);
            if (closing < 0.0 || g < -touch_tol(t)) {
                return Crossing{t, 0.5 * (left_front.position(t) + right_front.position(t))};
            }
            // Separating touch (shared birth point): step past it once.
            const double t_nudge = t + 1e-9 * (1.0 + std::abs(t));
            if (gap(t_nudge) <= touch_tol(t_nudge)) return std::nullopt;
            t = t_nudge;
            g = gap(t);
            continue;
        }
        const SpeedRange vl = future_speed_range(left_front, t);
        const SpeedRange vr = future_speed_range(right_front, t);
        // Sharpest guaranteed closing speed from t onward. Nonnegative means
        // the gap can never shrink again.
        const double m = vr.lo - vl.hi;
        if (m >= 0.0) return std::nullopt;
        // No crossing can occur before t + g/|m|.
        const double jump = g / (-m);
        const double t_safe = t + jump;
        if (t_safe > scan_cap) return std::nullopt;

        // Probe past the guaranteed-clear span to look for a bracket.
        const double t_probe = std::min(scan_cap, t + 2.0 * jump);
        const double g_probe = gap(t_probe);
        if (g_probe <= 0.0) {
            const double root = solve_bracketed(gap, t, t_probe, g, g_probe, 1e-13);
            return Crossing{root,
                            0.5 * (left_front.position(root) + right_front.position(root))};
        }
        // A stalled jump means the gap is below the closing-speed resolution:
        // the fronts meet here for every practical purpose.
        if (jump <= 1e-13 * (1.0 + std::abs(t))) {
            return Crossing{t_safe,
                            0.5 * (left_front.position(t_safe) + right_front.position(t_safe))};
        }
        if (limit_closing >= 0.0 && t_probe >= scan_cap) return std::nullopt;
        t = t_safe;
        g = gap(t);
    }
    return std::nullopt;
}

ClusterSpan cluster_events(std::size_t head,
                           const std::vector<std::optional<Crossing>>& pending,
                           double tol_cluster) {
    if (head >= pending.size() || !pending[head]) {
        throw PreconditionError("cluster_events: head pair has no crossing");
    }
    const Crossing anchor = *pending[head];
    const auto joins = [&](std::size_t pair) {
        if (pair >= pending.size() || !pending[pair]) return false;
        return std::abs(pending[pair]->t - anchor.t) <= tol_cluster &&
               std::abs(pending[pair]->x - anchor.x) <= tol_cluster;
    };
    ClusterSpan span{head, head + 1};
    while (span.first > 0 && joins(span.first - 1)) --span.first;
    while (span.last < pending.size() && joins(span.last)) ++span.last;
    return span;
}

OutcomeKind classify_outcome(const FluidState& outer_left, const FluidState& outer_right) {
    const bool vl = outer_left.is_vacuum();
    const bool vr = outer_right.is_vacuum();
    if (!vl && vr) return OutcomeKind::A1;
    if (!vl && !vr) return OutcomeKind::A2;
    if (vl && !vr) return OutcomeKind::A3;
    return OutcomeKind::A4;
}

SdwTrajectory resolve(const std::vector<Participant>& participants,
                      double T, double X,
                      const FluidState& outer_left,
                      const FluidState& outer_right,
                      bool mode_3x3,
                      InteractionEvent* event_out) {
    if (participants.size() < 2) {
        throw PreconditionError("resolve: needs at least two participants");
    }

    double gamma = 0.0;
    double momentum = 0.0;
    double energy = 0.0;
    std::vector<double> xs, us, es;
    xs.reserve(participants.size());
    us.reserve(participants.size());
    for (const auto& p : participants) {
        const double xi = p.curve->strength(T);
        const double v = p.curve->speed(T);
        gamma += xi;
        momentum += xi * v;
        xs.push_back(xi);
        us.push_back(v);
        if (mode_3x3) {
            double ek = 0.0;
            if (!p.curve->is_contact()) ek = p.curve->trajectory().energy_component(T);
            es.push_back(ek);
            energy += xi * (0.5 * v * v + ek);
        }
    }

    double c0;
    if (gamma > 0.0) {
        c0 = momentum / gamma;
    } else {
        // Degenerate: all incoming strengths vanished; the outgoing wave is a
        // fresh simple wave between the outer states.
        if (outer_left.is_vacuum() || outer_right.is_vacuum() ||
            !(outer_left.u > outer_right.u)) {
            throw InvariantError("resolve: zero total strength with no admissible wave");
        }
        c0 = sdw_speed_y(outer_left, outer_right);
    }

    const OutcomeKind outcome = classify_outcome(outer_left, outer_right);
    SdwTrajectory::Kind kind = SdwTrajectory::Kind::bulk;
    switch (outcome) {
        case OutcomeKind::A1: kind = SdwTrajectory::Kind::right_vacuum; break;
        case OutcomeKind::A2: kind = SdwTrajectory::Kind::bulk; break;
        case OutcomeKind::A3: kind = SdwTrajectory::Kind::left_vacuum; break;
        case OutcomeKind::A4: kind = SdwTrajectory::Kind::double_vacuum; break;
    }

    std::optional<double> es0;
    if (mode_3x3 && gamma > 0.0) {
        // Energy continuity: gamma (c0^2/2 + e_s0) = sum xi_k (u_k^2/2 + e_k).
        es0 = energy / gamma - 0.5 * c0 * c0;
    } else if (mode_3x3) {
        // Fresh simple wave: the energy balance at constant speed pins e_s.
        const double el = outer_left.e.value_or(0.0);
        const double er = outer_right.e.value_or(0.0);
        const double qa = outer_right.rho * (0.5 * outer_right.u * outer_right.u + er) -
                          outer_left.rho * (0.5 * outer_left.u * outer_left.u + el);
        const double qb =
            outer_right.rho * outer_right.u * (0.5 * outer_right.u * outer_right.u + er) -
            outer_left.rho * outer_left.u * (0.5 * outer_left.u * outer_left.u + el);
        const double rate = sdw_strength_rate(outer_left, outer_right);
        es0 = (qa * c0 - qb) / rate - 0.5 * c0 * c0;
    }

    SdwTrajectory out(T, X, gamma, c0, outer_left, outer_right, kind, es0);

    if (event_out) {
        event_out->T = T;
        event_out->X = X;
        event_out->outcome_kind = outcome;
        event_out->participant_ids.clear();
        for (const auto& p : participants) event_out->participant_ids.push_back(p.id);
        event_out->strengths_in = std::move(xs);
        event_out->speeds_in = std::move(us);
        event_out->energies_in = std::move(es);
        event_out->gamma_out = gamma;
        event_out->c0_out = out.initial_speed();
        event_out->es0_out = es0;
    }
    return out;
}

} // namespace sdw
