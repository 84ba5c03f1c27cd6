#ifndef SDW_QUADRATURE_HPP
#define SDW_QUADRATURE_HPP

#include <cmath>
#include <cstddef>

namespace sdw {

// Adaptive Simpson quadrature with absolute error control.
// Recursion depth is capped; the cap is generous enough that hitting it
// means the integrand is effectively non-smooth at the requested tolerance.
namespace detail {

template <typename F>
double simpson_step(const F& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left  = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
         + simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

template <typename F>
double integrate(const F& f, double a, double b, double abs_tol, int max_depth = 48) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

// Fixed-order composite Simpson, for integrands that are already resolved
// on a uniform grid (used by tests as an independent cross-check).
template <typename F>
double integrate_uniform(const F& f, double a, double b, std::size_t n_intervals) {
    if (n_intervals % 2 != 0) ++n_intervals;
    const double h = (b - a) / static_cast<double>(n_intervals);
    double acc = f(a) + f(b);
    for (std::size_t i = 1; i < n_intervals; ++i) {
        acc += f(a + h * static_cast<double>(i)) * ((i % 2 != 0) ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

} // namespace sdw

#endif
