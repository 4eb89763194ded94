#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capdyn/riccati.hpp"
#include "capdyn/types.hpp"

namespace capdyn {

/// Parameters of dr/dt = (1 - r)(alpha + beta r), the no-depreciation growth
/// law. alpha is the endowment-independent part, beta the part proportional to
/// the endowment. The investment rate is folded into both, so alpha + beta is
/// the literal exponential rate of the solution.
struct LogisticRiccatiParams {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Time-ordered samples of endowment values plus the parameters that produced
/// them. values[i][s] is series s at times[i]. Scalar solutions carry one
/// series; coupled systems carry one series per (economy, capability).
struct Trajectory {
    std::vector<double> times;
    std::vector<std::string> series;
    std::vector<std::vector<double>> values;
    std::vector<std::pair<std::string, std::string>> meta;
};

/// r(t) = 1 - (a+b)(1-r0) / (b(1-r0) + (a+b r0) e^{(a+b)t}) with a = alpha,
/// b = beta. t = 0 returns r0 exactly; alpha + beta = 0 returns the constant r0.
double closed_form(double r0, const LogisticRiccatiParams& p, double t);

/// Capability-gap form: r(t) = 1 - rho0 / (q_qe rho0 + (1 - q_qe rho0) e^{rate t})
/// with rho0 = 1 - r0. Equivalent to closed_form under
/// alpha = rate (1 - q_qe), beta = rate q_qe.
double closed_form_weighted(double r0, double q_qe, double rate, double t);

/// Root-factorized solution of dr/dt = a r^2 + b r + c for a < 0 and a
/// nonnegative discriminant; repeated roots use the limiting rational form.
double closed_form_general(double r0, const RiccatiCoefficients& k, double t);

/// Classical fixed-step fourth-order integration of the scalar quadratic law,
/// sampled on t_grid (must start at 0 and increase strictly). Steps never
/// exceed max_step. Values may poke at most 1e-9 outside [0,1] and are clamped
/// back; a larger excursion signals a step-size bug and throws.
Trajectory integrate_frozen(const RiccatiCoefficients& k, double r0,
                            const std::vector<double>& t_grid, double max_step = 1e-3);

/// Simultaneous integration of the full coupled system: every complementarity
/// term is recomputed from the current state at every stage.
Trajectory integrate_coupled(const CapabilityRequirements& q, const Endowments& r0,
                             const ModelParams& params, const std::vector<double>& t_grid,
                             double max_step = 1e-3);

/// Pointwise a - b. Time grids must match exactly.
Trajectory gap_curve(const Trajectory& a, const Trajectory& b);

/// {0, dt, 2 dt, ...} up to t_end (inclusive when t_end is a multiple of dt).
std::vector<double> time_grid(double t_end, double dt);

/// First time a series reaches the threshold, linearly interpolated between
/// samples; absent if it never does.
std::optional<double> time_to_threshold(const Trajectory& traj, std::size_t series_index,
                                        double threshold);

/// Linear interpolation of a series at time t (t within the sampled range).
double sample_linear(const Trajectory& traj, std::size_t series_index, double t);

}  // namespace capdyn
