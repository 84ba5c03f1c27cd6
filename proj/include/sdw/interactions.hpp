#ifndef SDW_INTERACTIONS_HPP
#define SDW_INTERACTIONS_HPP

#include <optional>
#include <vector>

#include "sdw/trajectory.hpp"

namespace sdw {

struct Crossing {
    double t = 0.0;
    double x = 0.0;
};

enum class OutcomeKind { A1, A2, A3, A4 };

// One resolved interaction: the clustered meeting of >= 2 pairwise-adjacent
// fronts and the single outgoing shadow wave it produces.
struct InteractionEvent {
    double T = 0.0;
    double X = 0.0;
    std::vector<int> participant_ids; // left to right
    OutcomeKind outcome_kind = OutcomeKind::A2;

    // Diagnostics frozen at resolution time.
    std::vector<double> strengths_in;  // xi_k(T)
    std::vector<double> speeds_in;     // u_{s,k}(T)
    std::vector<double> energies_in;   // e_{s,k}(T), 3x3 runs
    double gamma_out = 0.0;
    double c0_out = 0.0;
    std::optional<double> es0_out;
    int out_id = -1;

    // Outermost regions at resolution (filled by the tracker). The fan data
    // matters only when the outer state is a vacuum.
    FluidState outer_left_state, outer_right_state;
    double right_fan_anchor = 0.0, right_fan_ua = 0.0, right_fan_ub = 0.0;
};

// Earliest meeting time of two adjacent front curves at or after t_now
// (central-line convention: c_l(t) = c_r(t)). Absent when the gap is
// nondecreasing forever, decided through the monotone speed ranges.
// `horizon` caps the search; pass infinity for an unbounded query.
std::optional<Crossing> next_crossing(const FrontCurve& left_front,
                                      const FrontCurve& right_front,
                                      double t_now,
                                      double horizon);

// Merges into the head event every pending adjacent-pair crossing whose time
// and position both lie within tol_cluster of the head. `pending[i]` is the
// crossing of fronts (i, i+1) in left-to-right order (absent if none); `head`
// indexes the pair that triggered the event. Returns the participant index
// range [first, last] (inclusive, fronts).
struct ClusterSpan {
    std::size_t first = 0;
    std::size_t last = 0;
};
ClusterSpan cluster_events(std::size_t head,
                           const std::vector<std::optional<Crossing>>& pending,
                           double tol_cluster);

// Participant data needed to resolve an interaction.
struct Participant {
    int id = -1;
    const FrontCurve* curve = nullptr;
};

// Builds the single outgoing shadow wave born at (X, T): total strength,
// strength-weighted speed, outermost states, vacuum kind, and (in 3x3 runs)
// the atom energy fixed by energy continuity across the interaction.
SdwTrajectory resolve(const std::vector<Participant>& participants,
                      double T, double X,
                      const FluidState& outer_left,
                      const FluidState& outer_right,
                      bool mode_3x3,
                      InteractionEvent* event_out = nullptr);

OutcomeKind classify_outcome(const FluidState& outer_left, const FluidState& outer_right);

} // namespace sdw

#endif
