#ifndef SDW_STATES_HPP
#define SDW_STATES_HPP

#include <optional>
#include <string>
#include <vector>

namespace sdw {

// Constant fluid region: density, velocity, and (in 3x3 runs) specific
// internal energy. rho == 0 marks a vacuum region; u is then only an
// interpolated placeholder.
struct FluidState {
    double rho = 0.0;
    double u = 0.0;
    std::optional<double> e;

    bool is_vacuum() const { return rho == 0.0; }
};

bool operator==(const FluidState& a, const FluidState& b);

// A 1-D profile of x. Catalog entries carry exact derivatives; tabulated
// data is evaluated with a monotone cubic so sampled values never over- or
// undershoot the table.
class Profile {
  public:
    enum class Kind { constant, linear, tanh_ramp, affine_by_parts, table };

    static Profile constant(double value);
    static Profile linear(double a, double b); // a + b*x
    // base + amplitude * tanh((x - center)/width)
    static Profile tanh_ramp(double base, double amplitude, double center, double width);
    // Piecewise linear through (xs, ys); equal consecutive xs encode a jump.
    static Profile affine_by_parts(std::vector<double> xs, std::vector<double> ys);
    static Profile table(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const { return eval(x); }
    double eval(double x) const;
    double deriv(double x) const;

    // Interior points where the profile changes monotonicity, derived for
    // catalog entries; tabulated profiles rely on declared extrema instead.
    std::vector<double> extrema(double lo, double hi) const;
    // Jump locations (affine_by_parts only).
    std::vector<double> jumps(double lo, double hi) const;

    double min_on(double lo, double hi) const;
    double max_on(double lo, double hi) const;

    Kind kind() const { return kind_; }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }
    double param_a() const { return a_; }
    double param_b() const { return b_; }
    double param_c() const { return c_; }
    double param_d() const { return d_; }

  private:
    Kind kind_ = Kind::constant;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
    std::vector<double> xs_, ys_;
    std::vector<double> tangents_; // monotone-cubic slopes (table only)

    void build_tangents();
};

// Initial data: a constant left state for x <= R and profiles on (R, x_max],
// extended by their x_max values beyond the window so the wave fan is finite.
struct InitialData {
    FluidState left_state;
    double R = 0.0;
    double x_max = 1.0;
    Profile rho_fn = Profile::constant(1.0);
    Profile u_fn = Profile::constant(0.0);
    std::optional<Profile> e_fn; // 3x3 runs only
    std::vector<double> declared_u_extrema;

    bool mode_3x3() const { return e_fn.has_value() || left_state.e.has_value(); }

    double rho_at(double x) const;
    double u_at(double x) const;
    double u_deriv_at(double x) const;
    double e_at(double x) const;

    // Declared extrema plus the catalog-derived ones, sorted, deduplicated,
    // restricted to (R, x_max).
    std::vector<double> u_extrema() const;

    // Velocity range over the whole data (left state included); bounds every
    // wave speed in the evolved solution.
    double u_min() const;
    double u_max() const;
    double rho_max() const;

    void validate() const;
};

enum class PartitionMode { general, decreasing_only };

// Mesh points R = Y_0 < Y_1 < ... <= x_max with cbrt(eps) <= dY <= C*cbrt(eps).
struct Partition {
    std::vector<double> points;
    double epsilon = 0.0;
    double C = 1.0;
    PartitionMode mode = PartitionMode::general;
    int level = 0; // dyadic refinement depth; epsilon is already eps0 / 8^level

    double spacing_lower() const;
    double spacing_upper() const;
    double mu() const { return spacing_upper(); }
    std::size_t cell_count() const { return points.empty() ? 0 : points.size() - 1; }
    void validate_spacing() const;
};

// Piecewise-constant sampled states: states[0] is the left state, and
// states[i+1] = (rho(Y_{i+1}), u(Y_{i+1})) rules the cell (Y_i, Y_{i+1}].
struct SampledStates {
    std::vector<FluidState> states;
};

// Equidistant spacing cbrt(eps) by default, segmented so every extremum of u
// lands exactly on a mesh point and the spacing bounds survive the snap.
Partition build_partition(const InitialData& data, double epsilon, double C,
                          PartitionMode mode = PartitionMode::general);

SampledStates sample_states(const InitialData& data, const Partition& p);

} // namespace sdw

#endif
