#ifndef SDW_ROOTS_HPP
#define SDW_ROOTS_HPP

#include <cmath>
#include <utility>

#include "sdw/errors.hpp"

namespace sdw {

// Safeguarded secant/bisection on a bracket [a,b] with f(a) and f(b) of
// opposite sign. Converges to |b-a| < tol_rel*(1+|t|) or an exact zero.
// The secant step is accepted only when it stays comfortably inside the
// bracket; otherwise the step falls back to bisection.
template <typename F>
double solve_bracketed(const F& f, double a, double b, double fa, double fb,
                       double tol_rel = 1e-12) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw PreconditionError("solve_bracketed: endpoints do not bracket a root");
    }
    for (int it = 0; it < 200; ++it) {
        const double width = b - a;
        if (width <= tol_rel * (1.0 + std::abs(a))) break;
        double c;
        const double denom = fb - fa;
        if (denom != 0.0) {
            c = a - fa * width / denom;
            const double margin = 0.01 * width;
            if (!(c > a + margin && c < b - margin)) c = 0.5 * (a + b);
        } else {
            c = 0.5 * (a + b);
        }
        const double fc = f(c);
        if (fc == 0.0) return c;
        if ((fc > 0.0) == (fa > 0.0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
            fb = fc;
        }
    }
    return 0.5 * (a + b);
}

template <typename F>
double solve_bracketed(const F& f, double a, double b, double tol_rel = 1e-12) {
    return solve_bracketed(f, a, b, f(a), f(b), tol_rel);
}

} // namespace sdw

#endif
