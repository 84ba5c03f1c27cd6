#include "sdw/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdw/errors.hpp"

namespace sdw {

bool operator==(const FluidState& a, const FluidState& b) {
    return a.rho == b.rho && a.u == b.u && a.e == b.e;
}

// ---------------------------------------------------------------------------
// Profile

Profile Profile::constant(double value) {
    Profile p;
    p.kind_ = Kind::constant;
    p.a_ = value;
    return p;
}

Profile Profile::linear(double a, double b) {
    Profile p;
    p.kind_ = Kind::linear;
    p.a_ = a;
    p.b_ = b;
    return p;
}

Profile Profile::tanh_ramp(double base, double amplitude, double center, double width) {
    if (width <= 0.0) throw ConfigError("tanh_ramp: width must be positive");
    Profile p;
    p.kind_ = Kind::tanh_ramp;
    p.a_ = base;
    p.b_ = amplitude;
    p.c_ = center;
    p.d_ = width;
    return p;
}

Profile Profile::affine_by_parts(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() < 2 || xs.size() != ys.size()) {
        throw ConfigError("affine_by_parts: need matching xs/ys with >= 2 nodes");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] < xs[i - 1]) throw ConfigError("affine_by_parts: xs must be nondecreasing");
    }
    Profile p;
    p.kind_ = Kind::affine_by_parts;
    p.xs_ = std::move(xs);
    p.ys_ = std::move(ys);
    return p;
}

Profile Profile::table(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() < 2 || xs.size() != ys.size()) {
        throw ConfigError("table: need matching xs/ys with >= 2 nodes");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] <= xs[i - 1]) throw ConfigError("table: xs must be strictly increasing");
    }
    Profile p;
    p.kind_ = Kind::table;
    p.xs_ = std::move(xs);
    p.ys_ = std::move(ys);
    p.build_tangents();
    return p;
}

// Fritsch-Carlson slopes: the interpolant is monotone on every interval where
// the data is, so sampled densities stay within the tabulated range.
void Profile::build_tangents() {
    const std::size_t n = xs_.size();
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        d[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    }
    tangents_.assign(n, 0.0);
    tangents_[0] = d[0];
    tangents_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        tangents_[i] = (d[i - 1] * d[i] > 0.0) ? 0.5 * (d[i - 1] + d[i]) : 0.0;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            tangents_[i] = tangents_[i + 1] = 0.0;
            continue;
        }
        const double alpha = tangents_[i] / d[i];
        const double beta = tangents_[i + 1] / d[i];
        const double s = alpha * alpha + beta * beta;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            tangents_[i] = tau * alpha * d[i];
            tangents_[i + 1] = tau * beta * d[i];
        }
    }
}

namespace {

std::size_t interval_index(const std::vector<double>& xs, double x) {
    // Last i with xs[i] <= x, clamped to a valid interval start.
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return 0;
    std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    if (i + 1 >= xs.size()) i = xs.size() - 2;
    return i;
}

} // namespace

double Profile::eval(double x) const {
    switch (kind_) {
        case Kind::constant:
            return a_;
        case Kind::linear:
            return a_ + b_ * x;
        case Kind::tanh_ramp:
            return a_ + b_ * std::tanh((x - c_) / d_);
        case Kind::affine_by_parts: {
            if (x <= xs_.front()) return ys_.front();
            if (x >= xs_.back()) return ys_.back();
            // Right-continuous across encoded jumps.
            std::size_t i = interval_index(xs_, x);
            while (i + 1 < xs_.size() - 1 && xs_[i + 1] == xs_[i]) ++i;
            const double w = xs_[i + 1] - xs_[i];
            if (w == 0.0) return ys_[i + 1];
            const double s = (x - xs_[i]) / w;
            return ys_[i] + s * (ys_[i + 1] - ys_[i]);
        }
        case Kind::table: {
            if (x <= xs_.front()) return ys_.front();
            if (x >= xs_.back()) return ys_.back();
            const std::size_t i = interval_index(xs_, x);
            const double h = xs_[i + 1] - xs_[i];
            const double s = (x - xs_[i]) / h;
            const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
            const double h10 = s * (1.0 - s) * (1.0 - s);
            const double h01 = s * s * (3.0 - 2.0 * s);
            const double h11 = s * s * (s - 1.0);
            return h00 * ys_[i] + h10 * h * tangents_[i] + h01 * ys_[i + 1] +
                   h11 * h * tangents_[i + 1];
        }
    }
    return 0.0;
}

double Profile::deriv(double x) const {
    switch (kind_) {
        case Kind::constant:
            return 0.0;
        case Kind::linear:
            return b_;
        case Kind::tanh_ramp: {
            const double t = std::tanh((x - c_) / d_);
            return b_ / d_ * (1.0 - t * t);
        }
        case Kind::affine_by_parts: {
            if (x <= xs_.front() || x >= xs_.back()) return 0.0;
            std::size_t i = interval_index(xs_, x);
            while (i + 1 < xs_.size() - 1 && xs_[i + 1] == xs_[i]) ++i;
            const double w = xs_[i + 1] - xs_[i];
            return (w == 0.0) ? 0.0 : (ys_[i + 1] - ys_[i]) / w;
        }
        case Kind::table: {
            if (x <= xs_.front() || x >= xs_.back()) return 0.0;
            const std::size_t i = interval_index(xs_, x);
            const double h = xs_[i + 1] - xs_[i];
            const double s = (x - xs_[i]) / h;
            const double dh00 = 6.0 * s * (s - 1.0);
            const double dh10 = (1.0 - s) * (1.0 - 3.0 * s);
            const double dh01 = -dh00;
            const double dh11 = s * (3.0 * s - 2.0);
            return (dh00 * ys_[i] + dh01 * ys_[i + 1]) / h + dh10 * tangents_[i] +
                   dh11 * tangents_[i + 1];
        }
    }
    return 0.0;
}

std::vector<double> Profile::extrema(double lo, double hi) const {
    std::vector<double> out;
    if (kind_ == Kind::affine_by_parts) {
        for (std::size_t i = 1; i + 1 < xs_.size(); ++i) {
            if (xs_[i] <= lo || xs_[i] >= hi) continue;
            const double dl = (xs_[i] > xs_[i - 1]) ? (ys_[i] - ys_[i - 1]) : 0.0;
            const double dr = (xs_[i + 1] > xs_[i]) ? (ys_[i + 1] - ys_[i]) : 0.0;
            if (dl * dr < 0.0) out.push_back(xs_[i]);
        }
    }
    // constant / linear / tanh_ramp are monotone; table extrema must be declared.
    return out;
}

std::vector<double> Profile::jumps(double lo, double hi) const {
    std::vector<double> out;
    if (kind_ == Kind::affine_by_parts) {
        for (std::size_t i = 1; i < xs_.size(); ++i) {
            if (xs_[i] == xs_[i - 1] && ys_[i] != ys_[i - 1] && xs_[i] > lo && xs_[i] < hi) {
                out.push_back(xs_[i]);
            }
        }
    }
    return out;
}

double Profile::min_on(double lo, double hi) const {
    double m = std::numeric_limits<double>::infinity();
    const int n = 512;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / n;
        m = std::min(m, eval(x));
    }
    return m;
}

double Profile::max_on(double lo, double hi) const {
    double m = -std::numeric_limits<double>::infinity();
    const int n = 512;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / n;
        m = std::max(m, eval(x));
    }
    return m;
}

// ---------------------------------------------------------------------------
// InitialData

double InitialData::rho_at(double x) const { return rho_fn.eval(std::min(x, x_max)); }
double InitialData::u_at(double x) const { return u_fn.eval(std::min(x, x_max)); }

double InitialData::u_deriv_at(double x) const {
    return (x >= x_max) ? 0.0 : u_fn.deriv(x);
}

double InitialData::e_at(double x) const {
    if (!e_fn) throw PreconditionError("e_at: energy profile requested in 2x2 mode");
    return e_fn->eval(std::min(x, x_max));
}

std::vector<double> InitialData::u_extrema() const {
    std::vector<double> out = declared_u_extrema;
    const auto derived = u_fn.extrema(R, x_max);
    out.insert(out.end(), derived.begin(), derived.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::vector<double> inside;
    for (double x : out) {
        if (x > R && x < x_max) inside.push_back(x);
    }
    return inside;
}

double InitialData::u_min() const { return std::min(left_state.u, u_fn.min_on(R, x_max)); }
double InitialData::u_max() const { return std::max(left_state.u, u_fn.max_on(R, x_max)); }
double InitialData::rho_max() const { return std::max(left_state.rho, rho_fn.max_on(R, x_max)); }

void InitialData::validate() const {
    if (!(left_state.rho > 0.0)) throw ConfigError("initial data: left density must be positive");
    if (!(x_max > R)) throw ConfigError("initial data: x_max must exceed R");
    if (e_fn && !left_state.e) {
        throw ConfigError("initial data: 3x3 mode needs e on the left state too");
    }
    if (!e_fn && left_state.e) {
        throw ConfigError("initial data: left state has e but no energy profile given");
    }
}

// ---------------------------------------------------------------------------
// Partition

double Partition::spacing_lower() const { return std::cbrt(epsilon); }
double Partition::spacing_upper() const { return C * std::cbrt(epsilon); }

void Partition::validate_spacing() const {
    const double lo = spacing_lower() * (1.0 - 1e-12);
    const double hi = spacing_upper() * (1.0 + 1e-12);
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double dy = points[i] - points[i - 1];
        if (!(dy >= lo && dy <= hi)) {
            throw InvariantError("partition spacing out of [cbrt(eps), C*cbrt(eps)]");
        }
    }
}

Partition build_partition(const InitialData& data, double epsilon, double C,
                          PartitionMode mode) {
    if (!(epsilon > 0.0)) throw ConfigError("build_partition: epsilon must be positive");
    if (!(data.x_max > data.R)) throw ConfigError("build_partition: x_max must exceed R");
    if (!(C >= 1.0)) throw ConfigError("build_partition: C must be >= 1");
    const double h = std::cbrt(epsilon);
    if (h > data.x_max - data.R) {
        throw PreconditionError("build_partition: cbrt(epsilon) exceeds the window");
    }

    // Segment the window at the declared extrema, then fill each segment
    // equidistantly with the largest count that keeps the spacing >= h. This
    // makes every extremum a mesh point while preserving the spacing bounds.
    std::vector<double> anchors{data.R};
    for (double x : data.u_extrema()) anchors.push_back(x);
    anchors.push_back(data.x_max);

    Partition p;
    p.epsilon = epsilon;
    p.C = C;
    p.mode = mode;
    p.points.push_back(data.R);
    for (std::size_t s = 0; s + 1 < anchors.size(); ++s) {
        const double a = anchors[s];
        const double b = anchors[s + 1];
        const double len = b - a;
        const auto n = static_cast<std::size_t>(std::floor(len / h * (1.0 + 1e-12)));
        if (n == 0) {
            throw PreconditionError(
                "build_partition: extremum spacing shorter than cbrt(epsilon)");
        }
        const double dy = len / static_cast<double>(n);
        if (dy > C * h * (1.0 + 1e-12)) {
            throw ConfigError("build_partition: C too small to honor the extremum snap");
        }
        for (std::size_t i = 1; i <= n; ++i) {
            p.points.push_back((i == n) ? b : a + dy * static_cast<double>(i));
        }
    }
    p.validate_spacing();
    return p;
}

SampledStates sample_states(const InitialData& data, const Partition& p) {
    if (p.points.size() < 2) throw PreconditionError("sample_states: empty partition");
    SampledStates out;
    out.states.reserve(p.points.size());
    out.states.push_back(data.left_state);
    const bool with_e = data.mode_3x3();
    for (std::size_t i = 1; i < p.points.size(); ++i) {
        const double y = p.points[i];
        FluidState s;
        s.rho = data.rho_at(y);
        s.u = data.u_at(y);
        if (with_e) s.e = data.e_at(y);
        if (!(s.rho > 0.0)) {
            throw ConfigError("sample_states: density profile must stay positive");
        }
        out.states.push_back(s);
    }
    return out;
}

} // namespace sdw
