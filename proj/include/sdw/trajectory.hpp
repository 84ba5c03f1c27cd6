#ifndef SDW_TRAJECTORY_HPP
#define SDW_TRAJECTORY_HPP

#include <optional>

#include "sdw/states.hpp"

namespace sdw {

// Closed-form shadow-wave dynamics from a delta-carrying initial jump:
// strength xi(t), speed u_s(t) and front c(t) of the wave born at
// (birth_x, birth_t) with initial strength gamma and initial speed c0.
//
// With s = t - birth_t and [q] = q_r - q_l, the bulk solution is
//   xi(s)  = sqrt(gamma^2 + rho_l rho_r [u]^2 s^2 + 2 gamma (c0[rho]-[rho u]) s)
//   u_s(s) = ([rho u] + xi'(s)) / [rho]                      (rho_l != rho_r)
//   u_s(s) = ubar + (gamma/xi)^2 (c0 - ubar)                 (rho_l == rho_r)
// and the front integrates exactly:
//   c(s) = birth_x + ([rho u] s + xi(s) - gamma) / [rho]     (rho_l != rho_r)
//   c(s) = birth_x + ubar s + (c0 - ubar) gamma s / xi(s)    (rho_l == rho_r).
// One-sided vacuum reduces the radicand to gamma^2 + 2 rho gamma |u - c0| s;
// a doubly-vacuum wave keeps constant speed and strength.
class SdwTrajectory {
  public:
    enum class Kind { bulk, left_vacuum, right_vacuum, double_vacuum };

    SdwTrajectory() = default;
    // gamma == 0 is allowed only for bulk waves born from a plain Riemann
    // jump; c0 is then forced to the overcompressive speed y.
    SdwTrajectory(double birth_t, double birth_x, double gamma, double c0,
                  FluidState left, FluidState right, Kind kind,
                  std::optional<double> e_s0 = std::nullopt);

    double birth_time() const { return t0_; }
    double birth_position() const { return x0_; }
    double gamma() const { return gamma_; }
    double initial_speed() const { return c0_; }
    Kind kind() const { return kind_; }
    const FluidState& left() const { return left_; }
    const FluidState& right() const { return right_; }
    std::optional<double> e_s0() const { return es0_; }

    double strength(double t) const;
    double speed(double t) const;
    double position(double t) const;

    // Specific internal energy of the atom (3x3 runs). The balance law for
    // the energy component integrates in closed form because the only
    // time-dependent flux term is u_s, whose antiderivative is the front.
    double energy_component(double t) const;

    // u_s is monotone in t; it tends to y (bulk, unequal densities), ubar
    // (equal densities), the non-vacuum neighbor velocity (one-sided vacuum)
    // or stays at c0 (double vacuum / simple wave).
    double limit_speed() const;
    bool is_straight() const { return straight_; }

    // Overcompressibility interval: speed(t) stays in [lo, hi] for all t.
    double speed_floor() const;
    double speed_ceil() const;

  private:
    double t0_ = 0.0, x0_ = 0.0;
    double gamma_ = 0.0, c0_ = 0.0;
    FluidState left_, right_;
    Kind kind_ = Kind::bulk;
    std::optional<double> es0_;

    bool equal_density_ = false; // bulk branch selector
    bool straight_ = false;
    double rate_ = 0.0;      // strength slope of a gamma == 0 simple wave
    double limit_speed_ = 0.0;

    double elapsed(double t) const;
};

// y and z of the speed-derivative factorization
// u_s' = -(gamma^2 [rho]/xi^3)(c0 - y)(c0 - z); z exists only when the
// densities differ (removable singularity otherwise).
double sdw_z(const FluidState& left, const FluidState& right);

// A front curve: either a straight contact discontinuity or a shadow-wave
// trajectory. c(birth) = birth position, c' = wave speed.
class FrontCurve {
  public:
    static FrontCurve contact(double birth_t, double birth_x, double speed);
    static FrontCurve shadow(SdwTrajectory traj);

    bool is_contact() const { return contact_; }
    const SdwTrajectory& trajectory() const;

    double birth_time() const { return t0_; }
    double position(double t) const;
    double speed(double t) const;
    double strength(double t) const; // 0 for contacts
    double limit_speed() const;
    bool is_straight() const { return contact_ || traj_.is_straight(); }

  private:
    bool contact_ = true;
    double t0_ = 0.0, x0_ = 0.0, cspeed_ = 0.0;
    SdwTrajectory traj_;
};

} // namespace sdw

#endif
