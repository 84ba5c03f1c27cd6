#include "sdw/trajectory.hpp"

#include <cmath>

#include "sdw/errors.hpp"
#include "sdw/riemann.hpp"

namespace sdw {

namespace {

constexpr double kDensityTieRel = 1e-12;

double checked_sqrt(double radicand, double scale) {
    // The radicand is nonnegative analytically; clip rounding dust.
    if (radicand < 0.0) {
        if (radicand < -1e-10 * (1.0 + scale)) {
            throw InvariantError("trajectory: negative strength radicand");
        }
        return 0.0;
    }
    return std::sqrt(radicand);
}

} // namespace

double sdw_z(const FluidState& left, const FluidState& right) {
    const double sl = std::sqrt(left.rho);
    const double sr = std::sqrt(right.rho);
    if (sl == sr) throw PreconditionError("sdw_z: equal densities");
    return (left.u * sl - right.u * sr) / (sl - sr);
}

SdwTrajectory::SdwTrajectory(double birth_t, double birth_x, double gamma, double c0,
                             FluidState left, FluidState right, Kind kind,
                             std::optional<double> e_s0)
    : t0_(birth_t), x0_(birth_x), gamma_(gamma), c0_(c0),
      left_(left), right_(right), kind_(kind), es0_(e_s0) {
    if (gamma_ < 0.0) throw PreconditionError("trajectory: negative strength");

    const double uscale = 1.0 + std::abs(left_.u) + std::abs(right_.u);
    switch (kind_) {
        case Kind::bulk: {
            if (!(left_.rho > 0.0) || !(right_.rho > 0.0)) {
                throw PreconditionError("trajectory: bulk wave needs positive densities");
            }
            if (c0_ > left_.u + 1e-12 * uscale || c0_ < right_.u - 1e-12 * uscale) {
                throw PreconditionError("trajectory: birth speed breaks overcompressibility");
            }
            const double rho_hi = std::max(left_.rho, right_.rho);
            equal_density_ = std::abs(left_.rho - right_.rho) < kDensityTieRel * rho_hi;
            const double y = sdw_speed_y(left_, right_);
            if (gamma_ == 0.0) {
                if (!(left_.u > right_.u)) {
                    throw PreconditionError("trajectory: zero-strength wave needs u_l > u_r");
                }
                c0_ = y; // simple wave: no freedom in the birth speed
                rate_ = sdw_strength_rate(left_, right_);
                straight_ = true;
                limit_speed_ = c0_;
            } else {
                limit_speed_ = equal_density_ ? 0.5 * (left_.u + right_.u) : y;
                straight_ = std::abs(c0_ - limit_speed_) <= 1e-14 * uscale;
                if (straight_) c0_ = limit_speed_;
            }
            break;
        }
        case Kind::right_vacuum:
            if (!(left_.rho > 0.0) || right_.rho != 0.0) {
                throw PreconditionError("trajectory: right_vacuum wants rho_l > 0, rho_r = 0");
            }
            if (gamma_ == 0.0) throw PreconditionError("trajectory: vacuum wave needs strength");
            if (c0_ > left_.u + 1e-12 * uscale) {
                throw PreconditionError("trajectory: birth speed exceeds u_l");
            }
            limit_speed_ = left_.u;
            straight_ = std::abs(left_.u - c0_) <= 1e-14 * uscale;
            break;
        case Kind::left_vacuum:
            if (left_.rho != 0.0 || !(right_.rho > 0.0)) {
                throw PreconditionError("trajectory: left_vacuum wants rho_l = 0, rho_r > 0");
            }
            if (gamma_ == 0.0) throw PreconditionError("trajectory: vacuum wave needs strength");
            if (c0_ < right_.u - 1e-12 * uscale) {
                throw PreconditionError("trajectory: birth speed below u_r");
            }
            limit_speed_ = right_.u;
            straight_ = std::abs(c0_ - right_.u) <= 1e-14 * uscale;
            break;
        case Kind::double_vacuum:
            if (left_.rho != 0.0 || right_.rho != 0.0) {
                throw PreconditionError("trajectory: double_vacuum wants both densities zero");
            }
            if (gamma_ == 0.0) throw PreconditionError("trajectory: vacuum wave needs strength");
            limit_speed_ = c0_;
            straight_ = true;
            break;
    }
}

double SdwTrajectory::elapsed(double t) const {
    if (t < t0_ - 1e-12 * (1.0 + std::abs(t0_))) {
        throw PreconditionError("trajectory: queried before birth time");
    }
    return std::max(0.0, t - t0_);
}

double SdwTrajectory::strength(double t) const {
    const double s = elapsed(t);
    switch (kind_) {
        case Kind::bulk: {
            if (gamma_ == 0.0) return rate_ * s;
            if (equal_density_) {
                const double rho = 0.5 * (left_.rho + right_.rho);
                return gamma_ + rho * (left_.u - right_.u) * s;
            }
            const double du = right_.u - left_.u;
            const double drho = right_.rho - left_.rho;
            const double dmom = right_.rho * right_.u - left_.rho * left_.u;
            const double lin = c0_ * drho - dmom;
            return checked_sqrt(gamma_ * gamma_ + left_.rho * right_.rho * du * du * s * s +
                                    2.0 * gamma_ * lin * s,
                                gamma_ * gamma_);
        }
        case Kind::right_vacuum:
            return checked_sqrt(gamma_ * gamma_ + 2.0 * left_.rho * gamma_ * (left_.u - c0_) * s,
                                gamma_ * gamma_);
        case Kind::left_vacuum:
            return checked_sqrt(gamma_ * gamma_ + 2.0 * right_.rho * gamma_ * (c0_ - right_.u) * s,
                                gamma_ * gamma_);
        case Kind::double_vacuum:
            return gamma_;
    }
    return 0.0;
}

double SdwTrajectory::speed(double t) const {
    const double s = elapsed(t);
    if (straight_) return c0_;
    switch (kind_) {
        case Kind::bulk: {
            const double xi = strength(t);
            if (equal_density_) {
                const double ubar = 0.5 * (left_.u + right_.u);
                const double r = gamma_ / xi;
                return ubar + r * r * (c0_ - ubar);
            }
            const double du = right_.u - left_.u;
            const double drho = right_.rho - left_.rho;
            const double dmom = right_.rho * right_.u - left_.rho * left_.u;
            const double lin = c0_ * drho - dmom;
            return (dmom + (left_.rho * right_.rho * du * du * s + gamma_ * lin) / xi) / drho;
        }
        case Kind::right_vacuum:
            return left_.u - gamma_ * (left_.u - c0_) / strength(t);
        case Kind::left_vacuum:
            return right_.u + gamma_ * (c0_ - right_.u) / strength(t);
        case Kind::double_vacuum:
            return c0_;
    }
    return 0.0;
}

double SdwTrajectory::position(double t) const {
    const double s = elapsed(t);
    if (straight_) return x0_ + c0_ * s;
    switch (kind_) {
        case Kind::bulk: {
            const double xi = strength(t);
            if (equal_density_) {
                const double ubar = 0.5 * (left_.u + right_.u);
                return x0_ + ubar * s + (c0_ - ubar) * gamma_ * s / xi;
            }
            const double drho = right_.rho - left_.rho;
            const double dmom = right_.rho * right_.u - left_.rho * left_.u;
            return x0_ + (dmom * s + xi - gamma_) / drho;
        }
        case Kind::right_vacuum:
            return x0_ + left_.u * s - (strength(t) - gamma_) / left_.rho;
        case Kind::left_vacuum:
            return x0_ + right_.u * s + (strength(t) - gamma_) / right_.rho;
        case Kind::double_vacuum:
            return x0_ + c0_ * s;
    }
    return x0_;
}

double SdwTrajectory::energy_component(double t) const {
    if (!es0_.has_value()) {
        throw PreconditionError("energy_component: trajectory has no energy data (2x2 mode)");
    }
    const double s = elapsed(t);
    const double el = left_.rho > 0.0 ? left_.e.value_or(0.0) : 0.0;
    const double er = right_.rho > 0.0 ? right_.e.value_or(0.0) : 0.0;
    // Jumps of the energy density and its flux across the front.
    const double qa = right_.rho * (0.5 * right_.u * right_.u + er) -
                      left_.rho * (0.5 * left_.u * left_.u + el);
    const double qb = right_.rho * right_.u * (0.5 * right_.u * right_.u + er) -
                      left_.rho * left_.u * (0.5 * left_.u * left_.u + el);
    if (gamma_ == 0.0) {
        // Constant-speed birth: the balance law pins e_s for all t >= T0.
        return (qa * c0_ - qb) / rate_ - 0.5 * c0_ * c0_;
    }
    const double xi = strength(t);
    const double us = speed(t);
    const double displaced = position(t) - x0_;
    const double total = gamma_ * (0.5 * c0_ * c0_ + *es0_) + qa * displaced - qb * s;
    return total / xi - 0.5 * us * us;
}

double SdwTrajectory::limit_speed() const { return limit_speed_; }

double SdwTrajectory::speed_floor() const {
    switch (kind_) {
        case Kind::bulk: return right_.u;
        case Kind::right_vacuum: return std::min(c0_, left_.u);
        case Kind::left_vacuum: return right_.u;
        case Kind::double_vacuum: return c0_;
    }
    return c0_;
}

double SdwTrajectory::speed_ceil() const {
    switch (kind_) {
        case Kind::bulk: return left_.u;
        case Kind::right_vacuum: return left_.u;
        case Kind::left_vacuum: return std::max(c0_, right_.u);
        case Kind::double_vacuum: return c0_;
    }
    return c0_;
}

// ---------------------------------------------------------------------------
// FrontCurve

FrontCurve FrontCurve::contact(double birth_t, double birth_x, double speed) {
    FrontCurve f;
    f.contact_ = true;
    f.t0_ = birth_t;
    f.x0_ = birth_x;
    f.cspeed_ = speed;
    return f;
}

FrontCurve FrontCurve::shadow(SdwTrajectory traj) {
    FrontCurve f;
    f.contact_ = false;
    f.t0_ = traj.birth_time();
    f.x0_ = traj.birth_position();
    f.traj_ = traj;
    return f;
}

const SdwTrajectory& FrontCurve::trajectory() const {
    if (contact_) throw PreconditionError("FrontCurve: contact has no trajectory");
    return traj_;
}

double FrontCurve::position(double t) const {
    return contact_ ? x0_ + cspeed_ * (t - t0_) : traj_.position(t);
}

double FrontCurve::speed(double t) const {
    return contact_ ? cspeed_ : traj_.speed(t);
}

double FrontCurve::strength(double t) const {
    return contact_ ? 0.0 : traj_.strength(t);
}

double FrontCurve::limit_speed() const {
    return contact_ ? cspeed_ : traj_.limit_speed();
}

} // namespace sdw
