#ifndef SDW_ANALYSIS_HPP
#define SDW_ANALYSIS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "sdw/states.hpp"
#include "sdw/tracker.hpp"

namespace sdw {

// ---------------------------------------------------------------------------
// Measure snapshots

struct SnapshotPiece {
    double a = 0.0, b = 0.0;
    FluidState state;
    bool vacuum = false;
    double fan_anchor = 0.0; // vacuum only; velocity is (x - anchor)/t

    double velocity_at(double x, double t) const;
};

struct SnapshotAtom {
    double x = 0.0;
    double mass = 0.0;     // xi(t)
    double momentum = 0.0; // xi u_s
    std::optional<double> e_s;
    std::optional<double> energy; // xi (u_s^2/2 + e_s), 3x3 runs
};

// The solution at fixed t: piecewise-constant absolutely continuous part
// tiling the window, plus one atom per shadow wave.
struct MeasureSnapshot {
    double t = 0.0;
    double window_lo = 0.0, window_hi = 0.0;
    std::vector<SnapshotPiece> pieces;
    std::vector<SnapshotAtom> atoms;

    double mass() const;
    double momentum() const;
};

// Valid for t between the last resolved event and the evolved horizon.
MeasureSnapshot snapshot(const WaveFan& fan, double t);

// ---------------------------------------------------------------------------
// Weak-form residuals

// Smooth compactly supported bump phi(x,t) = B((x-cx)/rx) B((t-ct)/rt) with
// B(s) = exp(-1/(1-s^2)). The x-antiderivative is tabulated once so piece
// integrals cost O(1).
class TestFunction {
  public:
    TestFunction(double center_x, double center_t, double radius_x, double radius_t);

    double value(double x, double t) const;
    double dx(double x, double t) const;
    double dt(double x, double t) const;
    // integral of B((s-cx)/rx) ds over (-inf, x]
    double bump_cdf_x(double x) const;

    double x_lo() const { return cx_ - rx_; }
    double x_hi() const { return cx_ + rx_; }
    double t_lo() const { return ct_ - rt_; }
    double t_hi() const { return ct_ + rt_; }
    double center_x() const { return cx_; }
    double center_t() const { return ct_; }
    double radius_x() const { return rx_; }
    double radius_t() const { return rt_; }

    static double bump(double s);
    static double bump_deriv(double s);

  private:
    double cx_, ct_, rx_, rt_;
    std::vector<double> cdf_; // prefix integrals of the x-bump on a fine grid
    double grid_h_ = 0.0;
};

// Mass and momentum weak-form defects of the evolved solution against phi,
// atoms included. `fan` must be at t = 0; a copy is driven through time.
// The atom representation satisfies the jump balances exactly, so these
// defects sit at quadrature/clustering noise.
std::pair<double, double> weak_residual(const WaveFan& fan, const TestFunction& phi,
                                        double quad_tol = 1e-10);

// Same defects for the width-epsilon rendering of the singular part: each
// shadow front becomes a strip of width eps*t carrying the intermediate state
// (xi/(eps t), u_s). This is the finite-eps net whose residual scales like
// eps^(2/3) under cube-root partitions.
std::pair<double, double> weak_residual_rendered(const WaveFan& fan, const TestFunction& phi,
                                                 double epsilon, double quad_tol = 1e-10);

// ---------------------------------------------------------------------------
// Classical characteristics oracle

// Smooth solution right of the singular front: u(x,t) = u(psi) along
// x = u(psi) t + psi and rho(x,t) = rho(psi)/(1 + u'(psi) t).
class ClassicalOracle {
  public:
    explicit ClassicalOracle(InitialData data);

    FluidState at(double x, double t) const;
    // Infimum of -1/u' over focusing slopes, ignoring the above-Gamma filter.
    double t_max_unfiltered() const { return t_max_unfiltered_; }

  private:
    InitialData data_;
    double t_max_unfiltered_;
    double u_lo_, u_hi_;
};

FluidState classical_solution(const InitialData& data, double x, double t);

// ---------------------------------------------------------------------------
// Gamma curve (the 0-SDW chain) and refinement instruments

struct GammaCurve {
    double anchor_t = 0.0, anchor_x = 0.0;
    std::vector<double> ts, xs; // dense samples, increasing t
    struct Event {
        double t = 0.0, x = 0.0;
        double tag_x = 0.0; // initial-junction coordinate of the absorbed wave
    };
    std::vector<Event> events;
    double final_limit_speed = 0.0;

    double end_time() const { return ts.empty() ? anchor_t : ts.back(); }
    double position_at(double t) const; // linear interp; limit-speed extrapolation
};

struct GammaExtract {
    GammaCurve curve;
    // min over the chain of (front speed - solution velocity just right of
    // the front); the uniform-gap assumption holds when this is positive.
    double alpha = 0.0;
};

// Requires the junction (R, 0) to have emitted a shadow wave.
GammaExtract extract_gamma(const WaveFan& evolved, int interior_samples = 32);

// Sup over interaction points matched by initial-junction coordinate of the
// time and position gaps, capped at `horizon`. Falls back to a dense curve
// distance when no tags match.
double gamma_distance(const GammaCurve& g1, const GammaCurve& g2, double horizon);

// Life span of the classical solution right of Gamma: infimum of -1/u'(x)
// over focusing points D_x lying above (right of) the curve. Infinity when
// u is increasing or every focusing point is swallowed first.
double t_max(const InitialData& data, const GammaCurve* gamma = nullptr);

// Midpoint (or bounded-ratio) dyadic refinement: epsilon drops by 8, the
// spacing bounds scale by 1/2.
Partition refine_partition(const Partition& p, double ratio = 0.5);

// ---------------------------------------------------------------------------
// Tracked-vs-classical comparison

struct L1Comparison {
    double mass_integral_err = 0.0; // |mass of fan over [a,b] - classical mass|
    double u_l1_err = 0.0;          // integral of |u_fan - u_classical| over [a,b]
    double combined() const { return std::max(mass_integral_err, u_l1_err); }
};

L1Comparison compare_with_classical(const WaveFan& evolved, const ClassicalOracle& oracle,
                                    double t, double a, double b, double quad_tol = 1e-9);

} // namespace sdw

#endif
