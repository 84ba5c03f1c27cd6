#ifndef SDW_RIEMANN_HPP
#define SDW_RIEMANN_HPP

#include "sdw/states.hpp"

namespace sdw {

// Overcompressive shadow-wave speed for states with positive densities:
// a square-root-weighted mean of the velocities, so u_r <= y <= u_l.
double sdw_speed_y(const FluidState& left, const FluidState& right);

// Strength growth rate of the simple shadow wave born between two states:
// sqrt(rho_l rho_r) (u_l - u_r); reduces to rho (u_l - u_r) at equal density.
double sdw_strength_rate(const FluidState& left, const FluidState& right);

struct RiemannSolution {
    enum class Kind { contact, vacuum_fan, simple_sdw };
    Kind kind = Kind::contact;

    // contact: speed == u_l == u_r.
    // vacuum_fan: edge speeds (u_left, u_right), u_left < u_right.
    // simple_sdw: y speed and strength rate (strength = xi_rate * t).
    double contact_speed = 0.0;
    double fan_left = 0.0;
    double fan_right = 0.0;
    double y = 0.0;
    double xi_rate = 0.0;

    FluidState left, right;

    bool is_zero_jump() const {
        return kind == Kind::contact && left == right;
    }
};

// Classifies the jump by sign(u_l - u_r): equal velocities give a contact,
// divergent ones a vacuum fan, convergent ones a simple shadow wave.
RiemannSolution solve_riemann(const FluidState& left, const FluidState& right);

// Velocity inside a vacuum fan anchored at `anchor` (born at t = 0): the
// linear-in-x interpolant between the edge values, which is the self-similar
// field (x - anchor)/t.
double vacuum_velocity(const RiemannSolution& fan, double x, double t, double anchor);

} // namespace sdw

#endif
