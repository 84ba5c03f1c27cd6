#include "sdw/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "sdw/errors.hpp"

namespace sdw {

namespace {
double cube(double x) { return x * x * x; }
}

double production(const SdwTrajectory& traj, double t) {
    const double us = traj.speed(t);
    const double l = traj.left().rho * cube(traj.left().u - us);
    const double r = traj.right().rho * cube(us - traj.right().u);
    return -0.5 * (l + r);
}

double entropy_drop_at_merge(double xi_l, double us_l, double xi_r, double us_r) {
    const double xi = xi_l + xi_r;
    if (!(xi > 0.0)) throw PreconditionError("entropy_drop_at_merge: zero total strength");
    const double du = us_l - us_r;
    return -0.5 * xi_l * xi_r * du * du / xi;
}

double entropy_drop_at_cluster(const std::vector<double>& strengths,
                               const std::vector<double>& speeds) {
    double xi = 0.0, mom = 0.0, kin2 = 0.0;
    for (std::size_t k = 0; k < strengths.size(); ++k) {
        xi += strengths[k];
        mom += strengths[k] * speeds[k];
        kin2 += strengths[k] * speeds[k] * speeds[k];
    }
    if (!(xi > 0.0)) throw PreconditionError("entropy_drop_at_cluster: zero total strength");
    return 0.5 * (mom * mom / xi - kin2);
}

double delta_d_sdw_cd(FanSide side, double rho, double u_state, double u_s) {
    const double jump = 0.5 * rho * cube(u_s - u_state);
    return side == FanSide::enter_fan ? jump : -jump;
}

namespace {

template <typename PieceEta, typename AtomEta>
double entropy_sum(const WaveFan& fan, double t, double M,
                   const PieceEta& piece_eta, const AtomEta& atom_eta) {
    const auto xs = fan.front_positions(t);
    for (double x : xs) {
        if (x < -M || x > M) throw PreconditionError("total_entropy: front outside [-M, M]");
    }
    double total = 0.0;
    double a = -M;
    for (std::size_t i = 0; i < fan.regions.size(); ++i) {
        const double b = (i < xs.size()) ? xs[i] : M;
        total += piece_eta(fan.regions[i].state) * std::max(0.0, b - a);
        a = b;
    }
    for (const auto& f : fan.fronts) {
        if (f.curve.is_contact()) continue;
        total += atom_eta(f);
    }
    return total;
}

} // namespace

double total_entropy(const WaveFan& fan, double t, double M) {
    return entropy_sum(
        fan, t, M,
        [](const FluidState& s) { return 0.5 * s.rho * s.u * s.u; },
        [&](const WaveFront& f) {
            const double us = f.curve.speed(t);
            return 0.5 * f.curve.strength(t) * us * us;
        });
}

double total_entropy_semiconvex(const WaveFan& fan, double t, double M,
                                const std::function<double(double)>& R,
                                const std::function<double(double)>& S) {
    if (!fan.mode_3x3) throw PreconditionError("total_entropy_semiconvex: needs 3x3 mode");
    return entropy_sum(
        fan, t, M,
        [&](const FluidState& s) {
            if (s.is_vacuum()) return 0.0;
            return s.rho * (R(s.u) + S(s.e.value_or(0.0)));
        },
        [&](const WaveFront& f) {
            const auto& traj = f.curve.trajectory();
            return f.curve.strength(t) *
                   (R(f.curve.speed(t)) + S(traj.energy_component(t)));
        });
}

double auto_window(const WaveFan& fan, double t_end) {
    double m = std::max(std::abs(fan.data_R()), std::abs(fan.data_x_max()));
    double umax = 0.0;
    for (const auto& s : fan.samples.states) umax = std::max(umax, std::abs(s.u));
    return m + umax * std::max(0.0, t_end) + 1.0;
}

EntropyReport build_entropy_report(WaveFan fan, double t_end, int trace_samples) {
    EntropyReport report;
    report.M = auto_window(fan, t_end);

    // Entropy flux through the window edges, carried by the constant end
    // states for the whole run.
    const FluidState& sl = fan.samples.states.front();
    const FluidState& sr = fan.samples.states.back();
    const double flux_diff =
        0.5 * sl.rho * sl.u * sl.u * sl.u - 0.5 * sr.rho * sr.u * sr.u * sr.u;

    std::vector<double> trace_ts;
    for (int i = 0; i <= trace_samples; ++i) {
        trace_ts.push_back(t_end * static_cast<double>(i) / trace_samples);
    }
    std::size_t next_trace = 0;

    const auto record_traces_until = [&](double t_cap) {
        while (next_trace < trace_ts.size() && trace_ts[next_trace] <= t_cap) {
            const double t = trace_ts[next_trace];
            if (t >= fan.t_last_event) {
                for (const auto& f : fan.fronts) {
                    if (f.curve.is_contact()) continue;
                    report.production_trace.emplace_back(
                        t, f.id, production(f.curve.trajectory(), t));
                }
                const double e = total_entropy(fan, t, report.M);
                report.total_trace.emplace_back(t, e);
                report.total_trace_corrected.emplace_back(t, e - flux_diff * t);
            }
            ++next_trace;
        }
    };

    for (;;) {
        const auto tn = peek_next_event(fan);
        if (!tn || *tn > t_end) break;
        record_traces_until(*tn);

        // Total entropy immediately before resolution; the pre-event fronts
        // are still valid exactly at the interaction time.
        const double e_before = total_entropy(fan, *tn, report.M);
        double d_before = 0.0;
        for (const auto& f : fan.fronts) {
            if (!f.curve.is_contact()) d_before += production(f.curve.trajectory(), *tn);
        }
        const std::size_t done = fan.history.size();
        run_until(fan, *tn);
        const double e_after = total_entropy(fan, *tn, report.M);
        double d_after = 0.0;
        for (const auto& f : fan.fronts) {
            if (!f.curve.is_contact()) d_after += production(f.curve.trajectory(), *tn);
        }

        double formula = 0.0;
        std::size_t nparts = 0;
        for (std::size_t k = done; k < fan.history.size(); ++k) {
            const auto& ev = fan.history[k];
            formula += entropy_drop_at_cluster(ev.strengths_in, ev.speeds_in);
            nparts += ev.participant_ids.size();
        }
        EntropyEventRecord rec;
        rec.T = *tn;
        rec.participants = nparts;
        rec.drop_measured = e_after - e_before;
        rec.drop_formula = formula;
        rec.d_before = d_before;
        rec.d_after = d_after;
        rec.delta_d = d_after - d_before;
        report.events.push_back(rec);
    }
    run_until(fan, t_end);
    record_traces_until(t_end);
    return report;
}

} // namespace sdw
