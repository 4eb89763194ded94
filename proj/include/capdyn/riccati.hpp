#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "capdyn/types.hpp"

namespace capdyn {

/// Coefficients of the quadratic growth law dr/dt = a r^2 + b r + c.
/// For model-built coefficients a <= 0 and c >= 0 always hold.
struct RiccatiCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

inline double quadratic_value(const RiccatiCoefficients& k, double r) {
    return (k.a * r + k.b) * r + k.c;
}

enum class Regime { unconditional_convergence, conditional_convergence };

const char* regime_name(Regime regime);

/// Where the growth rate peaks and on which side of the transition the
/// parameters sit. q_crit is absent when 2 gamma <= delta; when delta >= gamma
/// the returned threshold is >= 1, i.e. no feasible transition.
struct RegimeClassification {
    Regime regime = Regime::unconditional_convergence;
    double r_star = 0.0;
    std::optional<double> q_crit;
};

// ---- single-capability model (time rescaled by the number of activities) ----

/// a = -gamma q_bar, b = gamma (2 q_bar - 1) - delta q_bar, c = gamma (1 - q_bar).
RiccatiCoefficients coefficients_single(double q_bar, const ModelParams& params);

/// gamma (1 - r) ((1 - q_bar) + r q_bar) - delta r q_bar.
double growth_rate_single(double r, double q_bar, const ModelParams& params);

/// gamma / (2 gamma - delta) when 2 gamma > delta, absent otherwise.
std::optional<double> critical_intensity(const ModelParams& params);

/// 0 up to the critical intensity, then 1 - 1/(2 q_bar) - delta/(2 gamma),
/// clamped to [0,1]. At exact equality the vertex sits at 0, so 0 is returned.
double argmax_growth_single(double q_bar, const ModelParams& params);

RegimeClassification classify_single(double q_bar, const ModelParams& params);

// ---- multi-capability model (raw time) ----

/// dr_cb/dt = gamma (1 - r_cb) sum_p Q_pb Y_cp - delta r_cb sum_p q_pb,
/// evaluated for every economy and capability. Parallel over cells.
Matrix growth_rate_multi(const CapabilityRequirements& q, const Endowments& r,
                         const ModelParams& params);

/// Same growth law with endowments passed as a raw matrix and no domain
/// revalidation; integrator plumbing (intermediate stage states may sit a few
/// ulp outside [0,1]).
void growth_rhs(const CapabilityRequirements& q, const Matrix& r,
                const ModelParams& params, Matrix& out);

/// Quadratic coefficients of dr_cb/dt in r_cb with every other endowment held
/// at its current value. Exact, not an approximation: E_cpb does not involve
/// r_cb itself.
RiccatiCoefficients coefficients_multi(const CapabilityRequirements& q, const Endowments& r,
                                       std::size_t c, std::size_t b, const ModelParams& params);

/// Peak growth location for capability b of economy c: 0 when depreciation
/// dominates (linear coefficient <= 0), else the vertex -b/(2a) clamped to [0,1].
RegimeClassification argmax_growth_multi(const CapabilityRequirements& q, const Endowments& r,
                                         std::size_t c, std::size_t b, const ModelParams& params);

struct SteadyState {
    double location = 0.0;
    bool stable = false;
};

/// Real roots of a r^2 + b r + c restricted to [0,1], ascending, with a
/// stability flag (negative slope of the growth law at the root). Roots within
/// 1e-9 of the interval ends are snapped onto them. Complex roots yield an
/// empty list; model-built coefficients (a < 0, c >= 0) cannot produce them.
std::vector<SteadyState> steady_states(const RiccatiCoefficients& k);

}  // namespace capdyn
