#include "capdyn/kinematics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "capdyn/csv.hpp"

namespace capdyn {

namespace {

constexpr double kOvershootTol = 1e-9;

void check_grid(const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("time grid is empty");
    if (t_grid.front() != 0.0)
        throw std::invalid_argument("time grid must start at 0, got " +
                                    std::to_string(t_grid.front()));
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("time grid must increase strictly (index " +
                                        std::to_string(i) + ")");
}

double clamp_step_result(double v) {
    if (v > 1.0) {
        if (v - 1.0 > kOvershootTol)
            throw std::runtime_error("integrator overshoot above 1 by " +
                                     std::to_string(v - 1.0) + "; step size bug");
        return 1.0;
    }
    if (v < 0.0) {
        if (-v > kOvershootTol)
            throw std::runtime_error("integrator overshoot below 0 by " + std::to_string(-v) +
                                     "; step size bug");
        return 0.0;
    }
    return v;
}

}  // namespace

double closed_form(double r0, const LogisticRiccatiParams& p, double t) {
    if (!(r0 >= 0.0 && r0 <= 1.0))
        throw std::invalid_argument("r0 = " + std::to_string(r0) + " outside [0, 1]");
    if (p.alpha < 0.0 || p.beta < 0.0)
        throw std::invalid_argument("alpha and beta must be >= 0");
    const double rate = p.alpha + p.beta;
    if (t == 0.0 || rate == 0.0) return r0;
    const double gap = 1.0 - r0;
    const double denom = p.beta * gap + (p.alpha + p.beta * r0) * std::exp(rate * t);
    if (!std::isfinite(denom)) return 1.0;  // exp overflow: saturated
    const double value = 1.0 - rate * gap / denom;
    // alpha = 0 with r0 = 0 leaves the system at its lower equilibrium; the
    // formula then reads 1 - beta/beta and small rounding is all that remains.
    return value;
}

double closed_form_weighted(double r0, double q_qe, double rate, double t) {
    if (!(r0 >= 0.0 && r0 <= 1.0))
        throw std::invalid_argument("r0 = " + std::to_string(r0) + " outside [0, 1]");
    if (!(q_qe >= 0.0 && q_qe <= 1.0))
        throw std::invalid_argument("q_qe = " + std::to_string(q_qe) + " outside [0, 1]");
    if (!(rate >= 0.0)) throw std::invalid_argument("rate must be >= 0");
    if (t == 0.0 || rate == 0.0) return r0;
    const double gap = 1.0 - r0;
    const double weighted_gap = q_qe * gap;
    const double denom = weighted_gap + (1.0 - weighted_gap) * std::exp(rate * t);
    if (!std::isfinite(denom)) return 1.0;
    return 1.0 - gap / denom;
}

double closed_form_general(double r0, const RiccatiCoefficients& k, double t) {
    if (!(r0 >= 0.0 && r0 <= 1.0))
        throw std::invalid_argument("r0 = " + std::to_string(r0) + " outside [0, 1]");
    if (!(k.a < 0.0)) throw std::invalid_argument("closed_form_general requires a < 0");
    const double disc = k.b * k.b - 4.0 * k.a * k.c;
    if (disc < 0.0)
        throw std::invalid_argument(
            "complex roots; the growth law cannot produce them (is c >= 0?)");
    if (t == 0.0) return r0;

    const double scale = k.b * k.b + std::fabs(4.0 * k.a * k.c);
    if (disc <= 1e-14 * scale) {
        // repeated root: dr/dt = a (r - x)^2 has the rational solution below.
        const double x = -k.b / (2.0 * k.a);
        const double d0 = r0 - x;
        return x + d0 / (1.0 - k.a * d0 * t);
    }

    const double sq = std::sqrt(disc);
    const double x1 = (-k.b - sq) / (2.0 * k.a);  // smaller root (a < 0)
    const double x2 = (-k.b + sq) / (2.0 * k.a);
    const double lo = std::min(x1, x2), hi = std::max(x1, x2);
    if (r0 == hi || r0 == lo) return r0;  // equilibrium

    // (r - lo)/(r - hi) = K e^{kt}, k = a (lo - hi) > 0; r -> hi as t grows.
    const double K = (r0 - lo) / (r0 - hi);
    const double growth = k.a * (lo - hi);
    const double w = K * std::exp(growth * t);
    if (!std::isfinite(w) || std::fabs(w) > 1e300) return hi;
    return (lo - hi * w) / (1.0 - w);
}

namespace {

// One classical fourth-order step of the scalar quadratic law.
double rk4_scalar_step(const RiccatiCoefficients& k, double r, double h) {
    const double k1 = quadratic_value(k, r);
    const double k2 = quadratic_value(k, r + 0.5 * h * k1);
    const double k3 = quadratic_value(k, r + 0.5 * h * k2);
    const double k4 = quadratic_value(k, r + h * k3);
    return r + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Trajectory integrate_frozen(const RiccatiCoefficients& k, double r0,
                            const std::vector<double>& t_grid, double max_step) {
    if (!(r0 >= 0.0 && r0 <= 1.0))
        throw std::invalid_argument("r0 = " + std::to_string(r0) + " outside [0, 1]");
    if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be > 0");
    check_grid(t_grid);

    Trajectory traj;
    traj.times = t_grid;
    traj.series = {"r"};
    traj.values.reserve(t_grid.size());
    traj.values.push_back({r0});
    traj.meta = {{"a", format_double(k.a)},
                 {"b", format_double(k.b)},
                 {"c", format_double(k.c)},
                 {"r0", format_double(r0)},
                 {"max_step", format_double(max_step)}};

    double r = r0;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double span = t_grid[i] - t_grid[i - 1];
        const auto steps = static_cast<std::size_t>(std::ceil(span / max_step - 1e-12));
        const double h = span / static_cast<double>(steps ? steps : 1);
        for (std::size_t s = 0; s < std::max<std::size_t>(steps, 1); ++s)
            r = clamp_step_result(rk4_scalar_step(k, r, h));
        traj.values.push_back({r});
    }
    return traj;
}

Trajectory integrate_coupled(const CapabilityRequirements& q, const Endowments& r0,
                             const ModelParams& params, const std::vector<double>& t_grid,
                             double max_step) {
    if (q.capabilities() != r0.capabilities())
        throw std::invalid_argument("capability axis mismatch between requirements and start");
    if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be > 0");
    check_grid(t_grid);

    const std::size_t C = r0.economies(), B = r0.capabilities();
    Trajectory traj;
    traj.times = t_grid;
    traj.series.reserve(C * B);
    for (std::size_t c = 0; c < C; ++c)
        for (std::size_t b = 0; b < B; ++b)
            traj.series.push_back(r0.economy_labels()[c] + ":" + r0.capability_labels()[b]);
    traj.meta = {{"gamma", format_double(params.gamma)},
                 {"delta", format_double(params.delta)},
                 {"max_step", format_double(max_step)}};

    Matrix state = r0.r();
    Matrix k1(C, B), k2(C, B), k3(C, B), k4(C, B), stage(C, B);

    auto snapshot = [&](const Matrix& m) {
        std::vector<double> row(C * B);
        for (std::size_t c = 0; c < C; ++c)
            for (std::size_t b = 0; b < B; ++b) row[c * B + b] = m(c, b);
        return row;
    };
    traj.values.reserve(t_grid.size());
    traj.values.push_back(snapshot(state));

    const std::size_t n = C * B;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double span = t_grid[i] - t_grid[i - 1];
        const auto steps = static_cast<std::size_t>(std::ceil(span / max_step - 1e-12));
        const double h = span / static_cast<double>(steps ? steps : 1);
        for (std::size_t s = 0; s < std::max<std::size_t>(steps, 1); ++s) {
            growth_rhs(q, state, params, k1);
            for (std::size_t j = 0; j < n; ++j)
                stage.data()[j] = state.data()[j] + 0.5 * h * k1.data()[j];
            growth_rhs(q, stage, params, k2);
            for (std::size_t j = 0; j < n; ++j)
                stage.data()[j] = state.data()[j] + 0.5 * h * k2.data()[j];
            growth_rhs(q, stage, params, k3);
            for (std::size_t j = 0; j < n; ++j)
                stage.data()[j] = state.data()[j] + h * k3.data()[j];
            growth_rhs(q, stage, params, k4);
            for (std::size_t j = 0; j < n; ++j) {
                const double next =
                    state.data()[j] + h / 6.0 *
                                          (k1.data()[j] + 2.0 * k2.data()[j] +
                                           2.0 * k3.data()[j] + k4.data()[j]);
                state.data()[j] = clamp_step_result(next);
            }
        }
        traj.values.push_back(snapshot(state));
    }
    return traj;
}

Trajectory gap_curve(const Trajectory& a, const Trajectory& b) {
    if (a.times != b.times)
        throw std::invalid_argument("gap_curve: time grids differ");
    if (a.series.size() != b.series.size())
        throw std::invalid_argument("gap_curve: series counts differ");

    Trajectory out;
    out.times = a.times;
    out.series.reserve(a.series.size());
    for (std::size_t s = 0; s < a.series.size(); ++s)
        out.series.push_back(a.series[s] + "-" + b.series[s]);
    out.values.reserve(a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        std::vector<double> row(a.values[i].size());
        for (std::size_t s = 0; s < row.size(); ++s) row[s] = a.values[i][s] - b.values[i][s];
        out.values.push_back(std::move(row));
    }
    return out;
}

std::vector<double> time_grid(double t_end, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");
    const auto n = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
    std::vector<double> grid(n + 1);
    for (std::size_t i = 0; i <= n; ++i) grid[i] = static_cast<double>(i) * dt;
    return grid;
}

std::optional<double> time_to_threshold(const Trajectory& traj, std::size_t series_index,
                                        double threshold) {
    if (series_index >= traj.series.size())
        throw std::out_of_range("series index out of range");
    if (traj.values.empty()) return std::nullopt;
    if (traj.values[0][series_index] >= threshold) return traj.times[0];
    for (std::size_t i = 1; i < traj.values.size(); ++i) {
        const double prev = traj.values[i - 1][series_index];
        const double cur = traj.values[i][series_index];
        if (cur >= threshold) {
            const double span = traj.times[i] - traj.times[i - 1];
            const double frac = (cur == prev) ? 0.0 : (threshold - prev) / (cur - prev);
            return traj.times[i - 1] + frac * span;
        }
    }
    return std::nullopt;
}

double sample_linear(const Trajectory& traj, std::size_t series_index, double t) {
    if (series_index >= traj.series.size())
        throw std::out_of_range("series index out of range");
    if (traj.times.empty()) throw std::invalid_argument("empty trajectory");
    if (t <= traj.times.front()) return traj.values.front()[series_index];
    if (t >= traj.times.back()) return traj.values.back()[series_index];
    for (std::size_t i = 1; i < traj.times.size(); ++i) {
        if (t <= traj.times[i]) {
            const double frac = (t - traj.times[i - 1]) / (traj.times[i] - traj.times[i - 1]);
            const double prev = traj.values[i - 1][series_index];
            return prev + frac * (traj.values[i][series_index] - prev);
        }
    }
    return traj.values.back()[series_index];
}

}  // namespace capdyn
