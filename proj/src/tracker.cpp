#include "sdw/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdw/errors.hpp"
#include "sdw/riemann.hpp"

namespace sdw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double Region::velocity_at(double x, double t) const {
    if (!is_vacuum()) return state.u;
    if (t <= 0.0) return 0.5 * (fan_ua + fan_ub);
    const double v = (x - fan_anchor) / t;
    return std::min(std::max(v, fan_ua), fan_ub);
}

double ConservationTotals::mass_drift() const {
    return std::abs(mass - mass_expected) / std::max({1.0, std::abs(mass_expected)});
}
double ConservationTotals::momentum_drift() const {
    return std::abs(momentum - momentum_expected) /
           std::max({1.0, std::abs(momentum_expected), mass_expected});
}
double ConservationTotals::energy_drift() const {
    return std::abs(energy - energy_expected) /
           std::max({1.0, std::abs(energy_expected), mass_expected});
}

std::vector<double> WaveFan::front_positions(double t) const {
    std::vector<double> xs;
    xs.reserve(fronts.size());
    for (const auto& f : fronts) xs.push_back(f.curve.position(t));
    return xs;
}

std::pair<double, double> WaveFan::window_at(double t) const {
    double lo = data_R();
    double hi = data_x_max();
    for (const auto& f : fronts) {
        const double x = f.curve.position(t);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return {lo - 1.0, hi + 1.0};
}

std::size_t WaveFan::index_of(int front_id) const {
    for (std::size_t i = 0; i < fronts.size(); ++i) {
        if (fronts[i].id == front_id) return i;
    }
    throw InvariantError("WaveFan: unknown front id");
}

std::vector<int> WaveFan::index_set() const {
    std::vector<int> out;
    if (!regions.empty() && !regions.front().is_vacuum()) out.push_back(0);
    for (std::size_t i = 0; i < fronts.size(); ++i) {
        if (!regions[i + 1].is_vacuum()) out.push_back(fronts[i].root_right + 1);
    }
    return out;
}

const WaveFront& WaveFan::registry_front(int id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= registry.size()) {
        throw InvariantError("WaveFan: unknown registry id");
    }
    return registry[static_cast<std::size_t>(id)];
}

double simple_wave_es0(const FluidState& left, const FluidState& right) {
    const double y = sdw_speed_y(left, right);
    const double rate = sdw_strength_rate(left, right);
    const double el = left.e.value_or(0.0);
    const double er = right.e.value_or(0.0);
    const double qa = right.rho * (0.5 * right.u * right.u + er) -
                      left.rho * (0.5 * left.u * left.u + el);
    const double qb = right.rho * right.u * (0.5 * right.u * right.u + er) -
                      left.rho * left.u * (0.5 * left.u * left.u + el);
    return (qa * y - qb) / rate - 0.5 * y * y;
}

WaveFan initialize(const SampledStates& samples, const Partition& p, double tol_cluster) {
    if (samples.states.size() != p.points.size()) {
        throw PreconditionError("initialize: samples do not match partition");
    }
    WaveFan fan;
    fan.partition = p;
    fan.samples = samples;
    fan.tol_cluster = tol_cluster;
    fan.mode_3x3 = samples.states.front().e.has_value();

    fan.regions.push_back(Region{samples.states[0]});
    for (std::size_t i = 0; i + 1 < samples.states.size(); ++i) {
        const FluidState& l = samples.states[i];
        const FluidState& r = samples.states[i + 1];
        const double y = p.points[i];
        const auto sol = solve_riemann(l, r);
        if (sol.is_zero_jump()) {
            // No wave; the constant region swallows the next cell.
            fan.regions.back().state = r;
            continue;
        }
        const int j = static_cast<int>(i);
        switch (sol.kind) {
            case RiemannSolution::Kind::contact: {
                WaveFront f;
                f.id = fan.next_id_++;
                f.curve = FrontCurve::contact(0.0, y, sol.contact_speed);
                f.root_left = f.root_right = j;
                fan.fronts.push_back(f);
                fan.registry.push_back(f);
                fan.regions.push_back(Region{r});
                break;
            }
            case RiemannSolution::Kind::vacuum_fan: {
                WaveFront cd1;
                cd1.id = fan.next_id_++;
                cd1.curve = FrontCurve::contact(0.0, y, sol.fan_left);
                cd1.root_left = cd1.root_right = j;
                fan.fronts.push_back(cd1);
                fan.registry.push_back(cd1);
                Region vac;
                vac.state = FluidState{0.0, 0.5 * (sol.fan_left + sol.fan_right), std::nullopt};
                vac.fan_anchor = y;
                vac.fan_ua = sol.fan_left;
                vac.fan_ub = sol.fan_right;
                fan.regions.push_back(vac);
                WaveFront cd2;
                cd2.id = fan.next_id_++;
                cd2.curve = FrontCurve::contact(0.0, y, sol.fan_right);
                cd2.root_left = cd2.root_right = j;
                fan.fronts.push_back(cd2);
                fan.registry.push_back(cd2);
                fan.regions.push_back(Region{r});
                break;
            }
            case RiemannSolution::Kind::simple_sdw: {
                std::optional<double> es0;
                if (fan.mode_3x3) es0 = simple_wave_es0(l, r);
                SdwTrajectory traj(0.0, y, 0.0, sol.y, l, r, SdwTrajectory::Kind::bulk, es0);
                WaveFront f;
                f.id = fan.next_id_++;
                f.curve = FrontCurve::shadow(traj);
                f.root_left = f.root_right = j;
                if (j == 0) fan.zero_front_id = f.id;
                fan.fronts.push_back(f);
                fan.registry.push_back(f);
                fan.regions.push_back(Region{r});
                break;
            }
        }
    }

    for (std::size_t i = 0; i + 1 < fan.fronts.size(); ++i) fan.enqueue_pair(i, 0.0);
    return fan;
}

void WaveFan::enqueue_pair(std::size_t left_index, double from_t) {
    const auto crossing =
        next_crossing(fronts[left_index].curve, fronts[left_index + 1].curve, from_t, kInf);
    if (crossing) {
        queue_.push(QueuedCrossing{crossing->t, crossing->x, fronts[left_index].id,
                                   fronts[left_index + 1].id});
    }
}

void WaveFan::resolve_event(const QueuedCrossing& head) {
    const std::size_t li = index_of(head.left_id);

    // Cluster: recompute the crossings of nearby adjacent pairs and pull in
    // every chain neighbor meeting within tol_cluster of the head.
    std::size_t win_lo = li;
    std::size_t win_hi = li; // pair indices [win_lo, win_hi]
    std::vector<std::optional<Crossing>> pending;
    ClusterSpan span;
    for (;;) {
        const std::size_t grow = 4;
        win_lo = (win_lo >= grow) ? win_lo - grow : 0;
        win_hi = std::min(win_hi + grow, fronts.size() - 2);
        pending.assign(win_hi - win_lo + 1, std::nullopt);
        for (std::size_t k = win_lo; k <= win_hi; ++k) {
            if (k == li) {
                pending[k - win_lo] = Crossing{head.t, head.x};
            } else {
                pending[k - win_lo] =
                    next_crossing(fronts[k].curve, fronts[k + 1].curve, t_last_event, kInf);
            }
        }
        span = cluster_events(li - win_lo, pending, tol_cluster);
        const bool touches_lo = (span.first == 0 && win_lo > 0);
        const bool touches_hi = (span.last == pending.size() && win_hi < fronts.size() - 2);
        if (!touches_lo && !touches_hi) break;
    }
    const std::size_t first = win_lo + span.first; // leftmost front
    const std::size_t last = win_lo + span.last;   // rightmost front

    std::vector<Participant> parts;
    parts.reserve(last - first + 1);
    for (std::size_t k = first; k <= last; ++k) {
        parts.push_back(Participant{fronts[k].id, &fronts[k].curve});
    }
    InteractionEvent event;
    SdwTrajectory out = resolve(parts, head.t, head.x, regions[first].state,
                                regions[last + 1].state, mode_3x3, &event);
    event.outer_left_state = regions[first].state;
    event.outer_right_state = regions[last + 1].state;
    if (regions[last + 1].is_vacuum()) {
        event.right_fan_anchor = regions[last + 1].fan_anchor;
        event.right_fan_ua = regions[last + 1].fan_ua;
        event.right_fan_ub = regions[last + 1].fan_ub;
    }

    WaveFront nf;
    nf.id = next_id_++;
    nf.curve = FrontCurve::shadow(out);
    nf.root_left = fronts[first].root_left;
    nf.root_right = fronts[last].root_right;
    for (std::size_t k = first; k <= last; ++k) {
        nf.root_left = std::min(nf.root_left, fronts[k].root_left);
        nf.root_right = std::max(nf.root_right, fronts[k].root_right);
    }
    event.out_id = nf.id;
    registry.push_back(nf);

    // Splice: drop the participants and the middle states they enclosed.
    fronts.erase(fronts.begin() + static_cast<std::ptrdiff_t>(first),
                 fronts.begin() + static_cast<std::ptrdiff_t>(last + 1));
    fronts.insert(fronts.begin() + static_cast<std::ptrdiff_t>(first), nf);
    regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(first + 1),
                  regions.begin() + static_cast<std::ptrdiff_t>(last + 1));

    if (first > 0) {
        const double xl = fronts[first - 1].curve.position(head.t);
        if (xl > head.x + 1e-9 * (1.0 + std::abs(head.x))) {
            throw InvariantError("run_until: front ordering violated on the left");
        }
        enqueue_pair(first - 1, head.t);
    }
    if (first + 1 < fronts.size()) {
        const double xr = fronts[first + 1].curve.position(head.t);
        if (xr < head.x - 1e-9 * (1.0 + std::abs(head.x))) {
            throw InvariantError("run_until: front ordering violated on the right");
        }
        enqueue_pair(first, head.t);
    }

    history.push_back(std::move(event));
    t_last_event = head.t;
}

// Lazy invalidation: drop crossings that reference dead fronts or pairs
// separated by an earlier resolution.
bool WaveFan::settle_queue_head() {
    while (!queue_.empty()) {
        const auto& head = queue_.top();
        bool left_alive = false, right_alive = false;
        std::size_t li = 0;
        for (std::size_t i = 0; i < fronts.size(); ++i) {
            if (fronts[i].id == head.left_id) {
                left_alive = true;
                li = i;
            } else if (fronts[i].id == head.right_id) {
                right_alive = true;
            }
        }
        const bool adjacent = left_alive && right_alive && li + 1 < fronts.size() &&
                              fronts[li + 1].id == head.right_id;
        if (adjacent) return true;
        queue_.pop();
    }
    return false;
}

void run_until(WaveFan& fan, double t_end) {
    if (t_end < fan.t_now) throw PreconditionError("run_until: t_end precedes t_now");
    while (fan.settle_queue_head() && fan.queue_.top().t <= t_end) {
        const auto head = fan.queue_.top();
        fan.queue_.pop();
        if (head.t < fan.t_last_event - 1e-12 * (1.0 + std::abs(head.t))) {
            throw InvariantError("run_until: event time regression");
        }
        fan.resolve_event(head);
    }
    fan.t_now = std::max(fan.t_now, t_end);
}

std::optional<double> peek_next_event(WaveFan& fan) {
    if (!fan.settle_queue_head()) return std::nullopt;
    return fan.queue_.top().t;
}

int count_fronts(const WaveFan& fan) { return static_cast<int>(fan.fronts.size()); }

ConservationTotals conservation_totals(const WaveFan& fan, double t) {
    ConservationTotals out;
    out.t = t;
    const auto [lo, hi] = fan.window_at(t);
    out.window_lo = lo;
    out.window_hi = hi;

    const auto piece_energy = [&](const FluidState& s) {
        return s.rho * (0.5 * s.u * s.u + (fan.mode_3x3 ? s.e.value_or(0.0) : 0.0));
    };

    // Current totals: pieces between front positions, plus the atoms.
    std::vector<double> xs = fan.front_positions(t);
    double a = lo;
    for (std::size_t i = 0; i < fan.regions.size(); ++i) {
        const double b = (i < xs.size()) ? xs[i] : hi;
        const double len = std::max(0.0, b - a);
        const FluidState& s = fan.regions[i].state;
        out.mass += s.rho * len;
        out.momentum += s.rho * s.u * len;
        out.energy += piece_energy(s) * len;
        a = b;
    }
    for (const auto& f : fan.fronts) {
        if (f.curve.is_contact()) continue;
        const double xi = f.curve.strength(t);
        const double us = f.curve.speed(t);
        out.mass += xi;
        out.momentum += xi * us;
        out.energy += xi * 0.5 * us * us;
        if (fan.mode_3x3) out.energy += xi * f.curve.trajectory().energy_component(t);
    }

    // Flux-corrected initial totals over the same window. The boundary
    // regions stay at the constant end states for every t in the run.
    const FluidState& sl = fan.samples.states.front();
    const FluidState& sr = fan.samples.states.back();
    double mass0 = sl.rho * (fan.data_R() - lo) + sr.rho * (hi - fan.data_x_max());
    double mom0 = sl.rho * sl.u * (fan.data_R() - lo) + sr.rho * sr.u * (hi - fan.data_x_max());
    double en0 = piece_energy(sl) * (fan.data_R() - lo) + piece_energy(sr) * (hi - fan.data_x_max());
    for (std::size_t i = 0; i + 1 < fan.partition.points.size(); ++i) {
        const double len = fan.partition.points[i + 1] - fan.partition.points[i];
        const FluidState& s = fan.samples.states[i + 1];
        mass0 += s.rho * len;
        mom0 += s.rho * s.u * len;
        en0 += piece_energy(s) * len;
    }
    const double el = fan.mode_3x3 ? sl.e.value_or(0.0) : 0.0;
    const double er = fan.mode_3x3 ? sr.e.value_or(0.0) : 0.0;
    out.mass_expected = mass0 + t * (sl.rho * sl.u - sr.rho * sr.u);
    out.momentum_expected = mom0 + t * (sl.rho * sl.u * sl.u - sr.rho * sr.u * sr.u);
    out.energy_expected =
        en0 + t * (sl.rho * sl.u * (0.5 * sl.u * sl.u + el) -
                   sr.rho * sr.u * (0.5 * sr.u * sr.u + er));
    return out;
}

} // namespace sdw
