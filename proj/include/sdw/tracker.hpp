#ifndef SDW_TRACKER_HPP
#define SDW_TRACKER_HPP

#include <optional>
#include <queue>
#include <vector>

#include "sdw/interactions.hpp"
#include "sdw/states.hpp"
#include "sdw/trajectory.hpp"

namespace sdw {

// Constant region between two fronts. Vacuum regions remember the fan they
// came from so the interior velocity can be interpolated at sampling time.
struct Region {
    FluidState state;
    double fan_anchor = 0.0; // vacuum only; fans are always born at t = 0
    double fan_ua = 0.0;
    double fan_ub = 0.0;

    bool is_vacuum() const { return state.is_vacuum(); }
    // Velocity at (x, t); the self-similar interpolant inside a vacuum.
    double velocity_at(double x, double t) const;
};

struct WaveFront {
    int id = -1;
    FrontCurve curve;
    // Initial-junction index range covered by this front's ancestry. The
    // 0-SDW chain is exactly the fronts whose range starts at junction 0.
    int root_left = -1;
    int root_right = -1;

    bool in_zero_chain() const { return root_left == 0; }
};

struct ConservationTotals {
    double t = 0.0;
    double mass = 0.0, momentum = 0.0, energy = 0.0;
    double mass_expected = 0.0, momentum_expected = 0.0, energy_expected = 0.0;
    double window_lo = 0.0, window_hi = 0.0;

    double mass_drift() const;
    double momentum_drift() const;
    double energy_drift() const;
};

// Ordered fan of constant regions and the fronts separating them, evolved by
// resolving interactions in event order.
class WaveFan {
  public:
    std::vector<Region> regions; // regions.size() == fronts.size() + 1
    std::vector<WaveFront> fronts;
    double t_now = 0.0;
    double t_last_event = 0.0;
    std::vector<InteractionEvent> history;
    bool mode_3x3 = false;
    double tol_cluster = 1e-9;

    // Initial data kept for accounting and diagnostics.
    Partition partition;
    SampledStates samples;

    // Every front ever created, for replaying dead trajectories (gamma-curve
    // extraction, event forensics).
    std::vector<WaveFront> registry;
    // Id of the shadow wave born at the junction (R, 0); -1 if that junction
    // emitted a contact, a fan, or nothing.
    int zero_front_id = -1;

    const WaveFront& registry_front(int id) const;

    double junction_x(int index) const { return partition.points.at(static_cast<std::size_t>(index)); }
    double data_R() const { return partition.points.front(); }
    double data_x_max() const { return partition.points.back(); }

    std::vector<double> front_positions(double t) const;
    // Accounting window guaranteed to contain every front at time t.
    std::pair<double, double> window_at(double t) const;

    // Surviving initial-state indices I_j, in fan order: index 0 for the left
    // state, k+1 for the cell sampled at Y_{k+1}. Middle states eliminated by
    // interactions drop out; vacuum regions carry no index.
    std::vector<int> index_set() const;

    std::size_t index_of(int front_id) const;

    friend WaveFan initialize(const SampledStates&, const Partition&, double tol_cluster);
    friend void run_until(WaveFan&, double t_end);
    friend std::optional<double> peek_next_event(WaveFan&);

  private:
    struct QueuedCrossing {
        double t = 0.0;
        double x = 0.0;
        int left_id = -1;
        int right_id = -1;
        bool operator>(const QueuedCrossing& o) const {
            if (t != o.t) return t > o.t;
            if (x != o.x) return x > o.x;
            return left_id > o.left_id;
        }
    };
    std::priority_queue<QueuedCrossing, std::vector<QueuedCrossing>, std::greater<>> queue_;
    int next_id_ = 0;

    void enqueue_pair(std::size_t left_index, double from_t);
    void resolve_event(const QueuedCrossing& head);
    // Drops stale queue entries; true when the head references a live,
    // adjacent pair.
    bool settle_queue_head();
};

// Step 1 of the algorithm: solve the Riemann problem at every junction and
// assemble the initial fan. Zero-jump junctions emit no front.
WaveFan initialize(const SampledStates& samples, const Partition& p,
                   double tol_cluster = 1e-9);

// Event loop: pop the earliest clustered interaction before t_end, resolve it
// into a single shadow wave, splice, and refresh the neighbor crossings.
void run_until(WaveFan& fan, double t_end);

// Time of the next pending interaction, if any. Does not resolve it.
std::optional<double> peek_next_event(WaveFan& fan);

int count_fronts(const WaveFan& fan);

// Mass/momentum(/energy) of pieces plus atoms over the accounting window,
// against the boundary-flux-corrected initial totals.
ConservationTotals conservation_totals(const WaveFan& fan, double t);

// Atom energy e_s used when a zero-strength simple wave is born in 3x3 mode,
// fixed by the energy balance across the front at constant speed.
double simple_wave_es0(const FluidState& left, const FluidState& right);

} // namespace sdw

#endif
