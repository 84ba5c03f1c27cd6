#include "sdw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdw/errors.hpp"
#include "sdw/quadrature.hpp"
#include "sdw/roots.hpp"

namespace sdw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// MeasureSnapshot

double SnapshotPiece::velocity_at(double x, double t) const {
    if (!vacuum) return state.u;
    if (t <= 0.0) return state.u;
    return (x - fan_anchor) / t;
}

double MeasureSnapshot::mass() const {
    double m = 0.0;
    for (const auto& p : pieces) m += p.state.rho * (p.b - p.a);
    for (const auto& a : atoms) m += a.mass;
    return m;
}

double MeasureSnapshot::momentum() const {
    double m = 0.0;
    for (const auto& p : pieces) m += p.state.rho * p.state.u * (p.b - p.a);
    for (const auto& a : atoms) m += a.momentum;
    return m;
}

MeasureSnapshot snapshot(const WaveFan& fan, double t) {
    const double slack = 1e-12 * (1.0 + std::abs(t));
    if (t > fan.t_now + slack) throw PreconditionError("snapshot: t beyond evolved horizon");
    if (t < fan.t_last_event - slack) {
        throw PreconditionError("snapshot: t precedes the last resolved event");
    }
    MeasureSnapshot snap;
    snap.t = t;
    const auto [lo, hi] = fan.window_at(t);
    snap.window_lo = lo;
    snap.window_hi = hi;
    const auto xs = fan.front_positions(t);
    double a = lo;
    for (std::size_t i = 0; i < fan.regions.size(); ++i) {
        const double b = (i < xs.size()) ? xs[i] : hi;
        SnapshotPiece piece;
        piece.a = a;
        piece.b = std::max(a, b);
        piece.state = fan.regions[i].state;
        piece.vacuum = fan.regions[i].is_vacuum();
        piece.fan_anchor = fan.regions[i].fan_anchor;
        snap.pieces.push_back(piece);
        a = piece.b;
    }
    for (std::size_t i = 0; i < fan.fronts.size(); ++i) {
        const auto& f = fan.fronts[i];
        if (f.curve.is_contact()) continue;
        SnapshotAtom atom;
        atom.x = xs[i];
        atom.mass = f.curve.strength(t);
        atom.momentum = atom.mass * f.curve.speed(t);
        if (fan.mode_3x3) {
            const double es = f.curve.trajectory().energy_component(t);
            atom.e_s = es;
            const double us = f.curve.speed(t);
            atom.energy = atom.mass * (0.5 * us * us + es);
        }
        snap.atoms.push_back(atom);
    }
    return snap;
}

// ---------------------------------------------------------------------------
// TestFunction

double TestFunction::bump(double s) {
    const double r = 1.0 - s * s;
    if (r <= 1e-14) return 0.0;
    return std::exp(-1.0 / r);
}

double TestFunction::bump_deriv(double s) {
    const double r = 1.0 - s * s;
    if (r <= 1e-14) return 0.0;
    return bump(s) * (-2.0 * s / (r * r));
}

TestFunction::TestFunction(double center_x, double center_t, double radius_x, double radius_t)
    : cx_(center_x), ct_(center_t), rx_(radius_x), rt_(radius_t) {
    if (!(rx_ > 0.0) || !(rt_ > 0.0)) {
        throw PreconditionError("TestFunction: radii must be positive");
    }
    // Prefix integrals of the x-bump on a uniform grid; queries add the tail
    // within one cell, so the table is effectively exact.
    const std::size_t n = 2048;
    grid_h_ = 2.0 * rx_ / static_cast<double>(n);
    cdf_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = x_lo() + grid_h_ * static_cast<double>(i);
        cdf_[i + 1] = cdf_[i] + integrate([&](double x) { return bump((x - cx_) / rx_); },
                                          a, a + grid_h_, 1e-16, 12);
    }
}

double TestFunction::bump_cdf_x(double x) const {
    if (x <= x_lo()) return 0.0;
    if (x >= x_hi()) return cdf_.back();
    const double pos = (x - x_lo()) / grid_h_;
    auto i = static_cast<std::size_t>(pos);
    if (i >= cdf_.size() - 1) i = cdf_.size() - 2;
    const double a = x_lo() + grid_h_ * static_cast<double>(i);
    return cdf_[i] + integrate([&](double s) { return bump((s - cx_) / rx_); }, a, x, 1e-16, 8);
}

double TestFunction::value(double x, double t) const {
    return bump((x - cx_) / rx_) * bump((t - ct_) / rt_);
}

double TestFunction::dx(double x, double t) const {
    return bump_deriv((x - cx_) / rx_) / rx_ * bump((t - ct_) / rt_);
}

double TestFunction::dt(double x, double t) const {
    return bump((x - cx_) / rx_) * bump_deriv((t - ct_) / rt_) / rt_;
}

// ---------------------------------------------------------------------------
// Weak residual

namespace {

struct ResidualIntegrand {
    const WaveFan& fan;
    const TestFunction& phi;
    // 0 renders the singular part as atoms; > 0 as strips of width eps*t.
    double eps_render = 0.0;

    // (G1, G2)(t): spatial integrals of the mass and momentum weak forms at
    // fixed t. Flux terms integrate exactly; the time-derivative terms use
    // the tabulated bump antiderivative.
    std::pair<double, double> operator()(double t) const {
        const double btp = TestFunction::bump_deriv((t - phi.center_t()) / phi.radius_t()) /
                           phi.radius_t();
        const auto xs = fan.front_positions(t);
        const double half_w = 0.5 * eps_render * t;
        double g1 = 0.0, g2 = 0.0;

        const auto add_block = [&](double lo, double hi, double rho, double u) {
            lo = std::max(lo, phi.x_lo());
            hi = std::min(hi, phi.x_hi());
            if (hi <= lo || rho == 0.0) return;
            const double cdf = phi.bump_cdf_x(hi) - phi.bump_cdf_x(lo);
            const double dphi = phi.value(hi, t) - phi.value(lo, t);
            g1 += rho * cdf * btp + rho * u * dphi;
            g2 += rho * u * cdf * btp + rho * u * u * dphi;
        };

        double a = phi.x_lo() - 1.0;
        for (std::size_t i = 0; i < fan.regions.size(); ++i) {
            const bool strip = i < xs.size() && !fan.fronts[i].curve.is_contact() &&
                               half_w > 0.0;
            const double b = (i < xs.size()) ? xs[i] - (strip ? half_w : 0.0)
                                             : phi.x_hi() + 1.0;
            add_block(a, std::max(b, a), fan.regions[i].state.rho, fan.regions[i].state.u);
            a = std::max(b, a);
            if (i < xs.size() && strip) {
                // Intermediate state of the fattened front.
                const double xi = fan.fronts[i].curve.strength(t);
                const double us = fan.fronts[i].curve.speed(t);
                add_block(xs[i] - half_w, xs[i] + half_w, xi / (2.0 * half_w), us);
                a = std::max(a, xs[i] + half_w);
            } else if (i < xs.size()) {
                a = std::max(a, xs[i]);
            }
        }
        if (half_w == 0.0) {
            for (std::size_t i = 0; i < fan.fronts.size(); ++i) {
                const auto& f = fan.fronts[i];
                if (f.curve.is_contact()) continue;
                const double c = xs[i];
                if (c <= phi.x_lo() || c >= phi.x_hi()) continue;
                const double xi = f.curve.strength(t);
                const double us = f.curve.speed(t);
                const double pt = phi.dt(c, t);
                const double px = phi.dx(c, t);
                g1 += xi * (pt + us * px);
                g2 += xi * us * (pt + us * px);
            }
        }
        return {g1, g2};
    }
};

} // namespace

namespace {

std::pair<double, double> residual_impl(const WaveFan& fan0, const TestFunction& phi,
                                        double eps_render, double quad_tol) {
    WaveFan fan = fan0;
    if (fan.t_now != 0.0 || !fan.history.empty()) {
        throw PreconditionError("weak_residual: fan must be at t = 0");
    }
    if (phi.t_hi() <= 0.0) {
        throw PreconditionError("weak_residual: test function unsupported in t >= 0");
    }
    const double t_sup = phi.t_hi();
    double e1 = 0.0, e2 = 0.0;

    // Initial-data term (nonzero only when the support reaches t = 0).
    if (phi.t_lo() < 0.0) {
        const double bt0 = TestFunction::bump((0.0 - phi.center_t()) / phi.radius_t());
        const auto& pts = fan.partition.points;
        double prev = phi.x_lo();
        // Left constant state, sampled cells, right constant extension.
        const FluidState& sl = fan.samples.states.front();
        e1 += sl.rho * bt0 * (phi.bump_cdf_x(pts.front()) - phi.bump_cdf_x(phi.x_lo()));
        e2 += sl.rho * sl.u * bt0 * (phi.bump_cdf_x(pts.front()) - phi.bump_cdf_x(phi.x_lo()));
        prev = pts.front();
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const FluidState& s = fan.samples.states[i + 1];
            const double seg = phi.bump_cdf_x(pts[i + 1]) - phi.bump_cdf_x(prev);
            e1 += s.rho * bt0 * seg;
            e2 += s.rho * s.u * bt0 * seg;
            prev = pts[i + 1];
        }
        const FluidState& sr = fan.samples.states.back();
        e1 += sr.rho * bt0 * (phi.bump_cdf_x(phi.x_hi()) - phi.bump_cdf_x(prev));
        e2 += sr.rho * sr.u * bt0 * (phi.bump_cdf_x(phi.x_hi()) - phi.bump_cdf_x(prev));
    }

    const double t_total = t_sup - std::max(0.0, phi.t_lo());
    double t_cur = 0.0;
    while (t_cur < t_sup) {
        const auto tn = peek_next_event(fan);
        const double seg_end = std::min(tn.value_or(kInf), t_sup);
        const double lo = std::max(t_cur, phi.t_lo());
        const double hi = std::min(seg_end, t_sup);
        if (hi > lo) {
            const ResidualIntegrand g{fan, phi, eps_render};
            const double tol = quad_tol * std::max(1e-3, (hi - lo) / std::max(t_total, 1e-12));
            e1 += integrate([&](double t) { return g(t).first; }, lo, hi, tol);
            e2 += integrate([&](double t) { return g(t).second; }, lo, hi, tol);
        }
        if (!tn || *tn > t_sup) break;
        run_until(fan, *tn);
        t_cur = *tn;
    }
    return {e1, e2};
}

} // namespace

std::pair<double, double> weak_residual(const WaveFan& fan0, const TestFunction& phi,
                                        double quad_tol) {
    return residual_impl(fan0, phi, 0.0, quad_tol);
}

std::pair<double, double> weak_residual_rendered(const WaveFan& fan0, const TestFunction& phi,
                                                 double epsilon, double quad_tol) {
    if (!(epsilon > 0.0)) throw PreconditionError("weak_residual_rendered: epsilon > 0");
    return residual_impl(fan0, phi, epsilon, quad_tol);
}

// ---------------------------------------------------------------------------
// ClassicalOracle

ClassicalOracle::ClassicalOracle(InitialData data) : data_(std::move(data)) {
    data_.validate();
    u_lo_ = data_.u_fn.min_on(data_.R, data_.x_max);
    u_hi_ = data_.u_fn.max_on(data_.R, data_.x_max);
    // Unfiltered life span: dense scan of the focusing times -1/u'.
    double tmax = kInf;
    const int n = 4096;
    for (int i = 0; i <= n; ++i) {
        const double x = data_.R + (data_.x_max - data_.R) * static_cast<double>(i) / n;
        const double du = data_.u_deriv_at(x);
        if (du < 0.0) tmax = std::min(tmax, -1.0 / du);
    }
    t_max_unfiltered_ = tmax;
}

FluidState ClassicalOracle::at(double x, double t) const {
    if (t < 0.0) throw PreconditionError("classical_solution: negative time");
    if (t == 0.0) {
        FluidState s{data_.rho_at(x), data_.u_at(x), std::nullopt};
        if (data_.mode_3x3()) s.e = data_.e_at(x);
        return s;
    }
    if (t >= t_max_unfiltered_) {
        throw PreconditionError("classical_solution: t beyond the classical life span");
    }
    const auto f = [&](double psi) { return data_.u_at(psi) * t + psi - x; };
    double lo = std::max(data_.R, x - u_hi_ * t - 1e-12);
    double hi = x - u_lo_ * t + 1e-12;
    if (hi < lo) hi = lo;
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo > 0.0) {
        throw PreconditionError("classical_solution: x left of the classical region");
    }
    double psi = solve_bracketed(f, lo, hi, flo, fhi, 1e-14);
    const double resid = f(psi);
    const double scale = 1e-9 * (1.0 + std::abs(x));
    if (std::abs(resid) > scale) {
        // No characteristic reaches (x, t): inside the fan opened by an
        // initial upward jump at psi.
        FluidState s{0.0, (x - psi) / t, std::nullopt};
        return s;
    }
    const double du = data_.u_deriv_at(psi);
    const double jac = 1.0 + du * t;
    if (jac <= 1e-12) {
        throw PreconditionError("classical_solution: characteristics focused (t >= T_max)");
    }
    FluidState s;
    s.u = data_.u_at(psi);
    s.rho = data_.rho_at(psi) / jac;
    if (data_.mode_3x3()) s.e = data_.e_at(psi); // e is transported along characteristics
    return s;
}

FluidState classical_solution(const InitialData& data, double x, double t) {
    return ClassicalOracle(data).at(x, t);
}

// ---------------------------------------------------------------------------
// Gamma curve

double GammaCurve::position_at(double t) const {
    if (ts.empty()) throw PreconditionError("GammaCurve: empty curve");
    if (t <= ts.front()) return xs.front();
    if (t >= ts.back()) return xs.back() + final_limit_speed * (t - ts.back());
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
    const double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
    return xs[i] + w * (xs[i + 1] - xs[i]);
}

GammaExtract extract_gamma(const WaveFan& evolved, int interior_samples) {
    if (evolved.zero_front_id < 0) {
        throw PreconditionError("extract_gamma: the junction (R,0) emitted no shadow wave");
    }
    GammaExtract out;
    GammaCurve& g = out.curve;
    g.anchor_t = 0.0;
    g.anchor_x = evolved.data_R();
    out.alpha = kInf;

    int cur = evolved.zero_front_id;
    double t_cur = 0.0;
    // Solution just right of the chain, for the slope-gap measurement.
    Region right_region;
    right_region.state = evolved.samples.states.at(1);

    const auto sample_segment = [&](const FrontCurve& curve, double ta, double tb) {
        const int n = std::max(1, interior_samples);
        for (int k = 0; k <= n; ++k) {
            const double t = ta + (tb - ta) * static_cast<double>(k) / n;
            if (!g.ts.empty() && t <= g.ts.back()) continue;
            const double x = curve.position(t);
            g.ts.push_back(t);
            g.xs.push_back(x);
            if (t > 0.0) {
                const double gap = curve.speed(t) - right_region.velocity_at(x, t);
                out.alpha = std::min(out.alpha, gap);
            }
        }
    };

    for (const auto& ev : evolved.history) {
        const bool involved =
            std::find(ev.participant_ids.begin(), ev.participant_ids.end(), cur) !=
            ev.participant_ids.end();
        if (!involved) continue;
        sample_segment(evolved.registry_front(cur).curve, t_cur, ev.T);
        GammaCurve::Event tag;
        tag.t = ev.T;
        tag.x = ev.X;
        tag.tag_x = evolved.junction_x(evolved.registry_front(ev.out_id).root_right);
        g.events.push_back(tag);
        cur = ev.out_id;
        t_cur = ev.T;
        right_region = Region{ev.outer_right_state, ev.right_fan_anchor, ev.right_fan_ua,
                              ev.right_fan_ub};
    }
    const auto& last = evolved.registry_front(cur);
    sample_segment(last.curve, t_cur, std::max(evolved.t_now, t_cur));
    g.final_limit_speed = last.curve.limit_speed();
    return out;
}

double gamma_distance(const GammaCurve& g1, const GammaCurve& g2, double horizon) {
    if (std::abs(g1.anchor_x - g2.anchor_x) > 1e-9 ||
        std::abs(g1.anchor_t - g2.anchor_t) > 1e-9) {
        throw PreconditionError("gamma_distance: curves have different anchors");
    }
    double sup = 0.0;
    bool matched = false;
    for (const auto& e1 : g1.events) {
        if (e1.t > horizon) continue;
        for (const auto& e2 : g2.events) {
            if (e2.t > horizon) continue;
            if (std::abs(e1.tag_x - e2.tag_x) <= 1e-12 * (1.0 + std::abs(e1.tag_x))) {
                matched = true;
                sup = std::max(sup, std::max(std::abs(e1.t - e2.t), std::abs(e1.x - e2.x)));
                break;
            }
        }
    }
    if (matched) return sup;
    // No shared interaction tags: fall back to the dense curve distance.
    const double t_end = std::min({horizon, g1.end_time(), g2.end_time()});
    const int n = 512;
    for (int k = 0; k <= n; ++k) {
        const double t = t_end * static_cast<double>(k) / n;
        sup = std::max(sup, std::abs(g1.position_at(t) - g2.position_at(t)));
    }
    return sup;
}

double t_max(const InitialData& data, const GammaCurve* gamma) {
    double best = kInf;
    const int n = 8192;
    for (int i = 0; i <= n; ++i) {
        const double x = data.R + (data.x_max - data.R) * static_cast<double>(i) / n;
        const double du = data.u_deriv_at(x);
        if (du >= 0.0) continue;
        const double td = -1.0 / du;
        if (gamma) {
            const double xd = x - data.u_at(x) / du;
            // Focusing points already swallowed by the singular front do not
            // limit the life span.
            if (xd <= gamma->position_at(td)) continue;
        }
        best = std::min(best, td);
    }
    return best;
}

Partition refine_partition(const Partition& p, double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw PreconditionError("refine_partition: ratio must lie in (0, 1)");
    }
    p.validate_spacing();
    Partition out;
    out.epsilon = p.epsilon / 8.0;
    out.C = p.C;
    out.mode = p.mode;
    out.level = p.level + 1;
    out.points.reserve(p.points.size() * 2);
    for (std::size_t i = 0; i + 1 < p.points.size(); ++i) {
        out.points.push_back(p.points[i]);
        out.points.push_back(p.points[i] + ratio * (p.points[i + 1] - p.points[i]));
    }
    out.points.push_back(p.points.back());
    out.validate_spacing(); // throws when the requested split breaks the bounds
    return out;
}

// ---------------------------------------------------------------------------
// Tracked vs classical

L1Comparison compare_with_classical(const WaveFan& evolved, const ClassicalOracle& oracle,
                                    double t, double a, double b, double quad_tol) {
    const auto snap = snapshot(evolved, t);
    L1Comparison out;

    double fan_mass = 0.0;
    for (const auto& piece : snap.pieces) {
        const double lo = std::max(piece.a, a);
        const double hi = std::min(piece.b, b);
        if (hi > lo) fan_mass += piece.state.rho * (hi - lo);
    }
    for (const auto& atom : snap.atoms) {
        if (atom.x >= a && atom.x <= b) fan_mass += atom.mass;
    }
    const double classical_mass =
        integrate([&](double x) { return oracle.at(x, t).rho; }, a, b, quad_tol);
    out.mass_integral_err = std::abs(fan_mass - classical_mass);

    double err_u = 0.0;
    for (const auto& piece : snap.pieces) {
        const double lo = std::max(piece.a, a);
        const double hi = std::min(piece.b, b);
        if (hi <= lo) continue;
        err_u += integrate(
            [&](double x) {
                return std::abs(piece.velocity_at(x, t) - oracle.at(x, t).u);
            },
            lo, hi, quad_tol);
    }
    out.u_l1_err = err_u;
    return out;
}

} // namespace sdw
