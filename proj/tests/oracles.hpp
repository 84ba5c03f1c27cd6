// Test-only numerical oracles, independent of the closed forms they check.
#ifndef SDW_TESTS_ORACLES_HPP
#define SDW_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Strength/speed balance ODE for a delta-carrying jump, in conserved
// variables y = (xi, xi*u_s):
//   xi' = [rho] u_s - [rho u]
//   (xi u_s)' = [rho u] u_s - [rho u^2].
struct SdwOde {
    double drho, dmom, dmom2;

    void rhs(const std::array<double, 2>& y, std::array<double, 2>& dy) const {
        const double us = y[1] / y[0];
        dy[0] = drho * us - dmom;
        dy[1] = dmom * us - dmom2;
    }
};

// Dormand-Prince 5(4) with adaptive step control; dense output by stepping
// exactly onto the requested sample times.
class DormandPrince {
  public:
    explicit DormandPrince(SdwOde ode, double rel_tol = 1e-12, double abs_tol = 1e-14)
        : ode_(ode), rel_tol_(rel_tol), abs_tol_(abs_tol) {}

    // Integrates from (t0, y0), appending the state at each time in `ts`
    // (strictly increasing, ts.front() >= t0).
    std::vector<std::array<double, 2>> solve(double t0, std::array<double, 2> y0,
                                             const std::vector<double>& ts) const {
        std::vector<std::array<double, 2>> out;
        double t = t0;
        auto y = y0;
        double h = 1e-4;
        for (double target : ts) {
            while (t < target) {
                bool clipped = false;
                double step = h;
                if (t + step >= target) {
                    step = target - t;
                    clipped = true;
                }
                std::array<double, 2> y_new{};
                double err = attempt(t, y, step, y_new);
                if (err <= 1.0) {
                    t += step;
                    y = y_new;
                    if (!clipped) h = step * std::min(5.0, 0.9 * std::pow(err + 1e-300, -0.2));
                } else {
                    h = step * std::max(0.2, 0.9 * std::pow(err, -0.2));
                    if (h < 1e-15 * (1.0 + std::abs(t))) {
                        throw std::runtime_error("oracle: step size underflow");
                    }
                }
            }
            out.push_back(y);
        }
        return out;
    }

  private:
    SdwOde ode_;
    double rel_tol_, abs_tol_;

    double attempt(double /*t*/, const std::array<double, 2>& y, double h,
                   std::array<double, 2>& y_out) const {
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                                a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                                e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

        std::array<double, 2> k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, tmp{};
        ode_.rhs(y, k1);
        for (int i = 0; i < 2; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        ode_.rhs(tmp, k2);
        for (int i = 0; i < 2; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        ode_.rhs(tmp, k3);
        for (int i = 0; i < 2; ++i) {
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        }
        ode_.rhs(tmp, k4);
        for (int i = 0; i < 2; ++i) {
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        }
        ode_.rhs(tmp, k5);
        for (int i = 0; i < 2; ++i) {
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                 a65 * k5[i]);
        }
        ode_.rhs(tmp, k6);
        for (int i = 0; i < 2; ++i) {
            y_out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                   b6 * k6[i]);
        }
        ode_.rhs(y_out, k7);
        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double y4 = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                          e6 * k6[i] + e7 * k7[i]);
            const double scale = abs_tol_ + rel_tol_ * std::max(std::abs(y[i]), std::abs(y_out[i]));
            err = std::max(err, std::abs(y_out[i] - y4) / scale);
        }
        return err;
    }
};

inline double central_diff(const std::function<double(double)>& f, double t, double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

} // namespace oracles

#endif
