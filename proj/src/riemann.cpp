#include "sdw/riemann.hpp"

#include <cmath>

#include "sdw/errors.hpp"

namespace sdw {

double sdw_speed_y(const FluidState& left, const FluidState& right) {
    const double sl = std::sqrt(left.rho);
    const double sr = std::sqrt(right.rho);
    if (sl + sr == 0.0) throw PreconditionError("sdw_speed_y: both densities vanish");
    return (sl * left.u + sr * right.u) / (sl + sr);
}

double sdw_strength_rate(const FluidState& left, const FluidState& right) {
    return std::sqrt(left.rho * right.rho) * (left.u - right.u);
}

RiemannSolution solve_riemann(const FluidState& left, const FluidState& right) {
    if (!(left.rho > 0.0) || !(right.rho > 0.0)) {
        throw PreconditionError("solve_riemann: densities must be positive");
    }
    RiemannSolution sol;
    sol.left = left;
    sol.right = right;
    if (left.u == right.u) {
        sol.kind = RiemannSolution::Kind::contact;
        sol.contact_speed = left.u;
    } else if (left.u < right.u) {
        sol.kind = RiemannSolution::Kind::vacuum_fan;
        sol.fan_left = left.u;
        sol.fan_right = right.u;
    } else {
        sol.kind = RiemannSolution::Kind::simple_sdw;
        sol.y = sdw_speed_y(left, right);
        sol.xi_rate = sdw_strength_rate(left, right);
    }
    return sol;
}

double vacuum_velocity(const RiemannSolution& fan, double x, double t, double anchor) {
    if (fan.kind != RiemannSolution::Kind::vacuum_fan) {
        throw PreconditionError("vacuum_velocity: not a vacuum fan");
    }
    if (!(t > 0.0)) throw PreconditionError("vacuum_velocity: t must be positive");
    const double xl = anchor + fan.fan_left * t;
    const double xr = anchor + fan.fan_right * t;
    const double slack = 1e-12 * (1.0 + std::abs(xr - xl));
    if (x < xl - slack || x > xr + slack) {
        throw PreconditionError("vacuum_velocity: x outside the fan");
    }
    const double v = (x - anchor) / t;
    return std::min(std::max(v, fan.fan_left), fan.fan_right);
}

} // namespace sdw
