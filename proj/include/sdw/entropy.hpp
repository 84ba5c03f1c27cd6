#ifndef SDW_ENTROPY_HPP
#define SDW_ENTROPY_HPP

#include <functional>
#include <optional>
#include <vector>

#include "sdw/tracker.hpp"
#include "sdw/trajectory.hpp"

namespace sdw {

// Energy production across a shadow wave for the physical energy pair
// eta = rho u^2/2, Q = rho u^3/2:
//   D(t) = -1/2 (rho_l (u_l - u_s)^3 + rho_r (u_s - u_r)^3) <= 0.
// Zero for contacts, constant for simple shadow waves.
double production(const SdwTrajectory& traj, double t);

// Total-entropy jump when two waves of strengths xi_{l,r} and speeds u_{s_l,r}
// merge: -1/2 xi_l xi_r (u_{s_l} - u_{s_r})^2 / (xi_l + xi_r) <= 0.
double entropy_drop_at_merge(double xi_l, double us_l, double xi_r, double us_r);

// Same jump for an m-wave cluster: the merge is associative, so the total
// equals the strength-weighted speed variance times -1/2.
double entropy_drop_at_cluster(const std::vector<double>& strengths,
                               const std::vector<double>& speeds);

// Signed jump of the production rate when a shadow wave crosses a fan edge:
// +rho_r (u_s - u_r)^3 / 2 entering the vacuum, the mirrored negative value
// leaving it. `u_state` is the velocity of the state being shed or gained.
enum class FanSide { enter_fan, exit_fan };
double delta_d_sdw_cd(FanSide side, double rho, double u_state, double u_s);

// Total entropy over [-M, M]: quadrature-free sum over constant pieces plus
// the atom terms xi u_s^2 / 2. Throws when a front escapes the window.
double total_entropy(const WaveFan& fan, double t, double M);

// Semi-convex pair eta = rho (R(u) + S(e)) for 3x3 runs; the atom carries
// xi (R(u_s) + S(e_s)). Defaults R(u) = u^2, S(e) = -e.
double total_entropy_semiconvex(const WaveFan& fan, double t, double M,
                                const std::function<double(double)>& R,
                                const std::function<double(double)>& S);

// Window guaranteed to contain every front of the run up to t_end.
double auto_window(const WaveFan& fan, double t_end);

struct EntropyEventRecord {
    double T = 0.0;
    std::size_t participants = 0;
    double drop_measured = 0.0; // total_entropy jump across the event
    double drop_formula = 0.0;  // merge-drop closed form
    double d_before = 0.0;      // sum of production rates just before T
    double d_after = 0.0;       // production rate of the outgoing wave at T
    double delta_d = 0.0;
};

struct EntropyReport {
    double M = 0.0;
    // (t, front id, D) sampled along every active shadow wave.
    std::vector<std::tuple<double, int, double>> production_trace;
    std::vector<EntropyEventRecord> events;
    std::vector<std::pair<double, double>> total_trace; // (t, E(t))
    // E(t) minus the accumulated boundary entropy flux; decays at the total
    // production rate between events and drops across them, so nonincreasing.
    std::vector<std::pair<double, double>> total_trace_corrected;
};

// Drives a copy of the fan to t_end, measuring the total entropy across every
// event and tracing production at `trace_samples` uniform times.
EntropyReport build_entropy_report(WaveFan fan, double t_end, int trace_samples = 100);

} // namespace sdw

#endif
