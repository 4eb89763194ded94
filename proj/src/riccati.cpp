#include "capdyn/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "capdyn/model.hpp"

namespace capdyn {

const char* regime_name(Regime regime) {
    return regime == Regime::unconditional_convergence ? "unconditional" : "conditional";
}

namespace {

void check_unit(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0))
        throw std::invalid_argument(std::string(name) + " = " + std::to_string(value) +
                                    " outside [0, 1]");
}

void check_cell(const CapabilityRequirements& q, const Endowments& r,
                std::size_t c, std::size_t b) {
    if (q.capabilities() != r.capabilities())
        throw std::invalid_argument("capability axis mismatch: requirements have B = " +
                                    std::to_string(q.capabilities()) + ", endowments have B = " +
                                    std::to_string(r.capabilities()));
    if (c >= r.economies())
        throw std::out_of_range("economy index " + std::to_string(c) + " out of range [0, " +
                                std::to_string(r.economies()) + ")");
    if (b >= q.capabilities())
        throw std::out_of_range("capability index " + std::to_string(b) + " out of range [0, " +
                                std::to_string(q.capabilities()) + ")");
}

}  // namespace

RiccatiCoefficients coefficients_single(double q_bar, const ModelParams& params) {
    check_unit(q_bar, "q_bar");
    return {-params.gamma * q_bar,
            params.gamma * (2.0 * q_bar - 1.0) - params.delta * q_bar,
            params.gamma * (1.0 - q_bar)};
}

double growth_rate_single(double r, double q_bar, const ModelParams& params) {
    check_unit(r, "r");
    check_unit(q_bar, "q_bar");
    return params.gamma * (1.0 - r) * ((1.0 - q_bar) + r * q_bar) - params.delta * r * q_bar;
}

std::optional<double> critical_intensity(const ModelParams& params) {
    const double denom = 2.0 * params.gamma - params.delta;
    if (denom <= 0.0) return std::nullopt;
    return params.gamma / denom;
}

double argmax_growth_single(double q_bar, const ModelParams& params) {
    check_unit(q_bar, "q_bar");
    if (q_bar == 0.0) return 0.0;  // linear decreasing growth
    const auto q_crit = critical_intensity(params);
    if (!q_crit || q_bar <= *q_crit) return 0.0;
    const double vertex = 1.0 - 1.0 / (2.0 * q_bar) - params.delta / (2.0 * params.gamma);
    return std::clamp(vertex, 0.0, 1.0);
}

RegimeClassification classify_single(double q_bar, const ModelParams& params) {
    RegimeClassification out;
    out.r_star = argmax_growth_single(q_bar, params);
    out.regime = out.r_star > 0.0 ? Regime::conditional_convergence
                                  : Regime::unconditional_convergence;
    out.q_crit = critical_intensity(params);
    return out;
}

void growth_rhs(const CapabilityRequirements& q, const Matrix& r,
                const ModelParams& params, Matrix& out) {
    const std::size_t C = r.rows(), P = q.activities(), B = q.capabilities();
    if (r.cols() != B)
        throw std::invalid_argument("capability axis mismatch in growth_rhs");
    if (out.rows() != C || out.cols() != B) out = Matrix(C, B);

    const Matrix& qm = q.q();
    const Matrix& share = q.share();
    const std::vector<double>& dep = q.column_sums();

    // Phase 1: outputs. Phase 2: per-cell weighted sums. Each cell is an
    // independent serial loop, so the result is thread-count invariant.
    Matrix y(C, P);
#pragma omp parallel for collapse(2) schedule(static) if (C* P >= 64)
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t p = 0; p < P; ++p) {
            double acc = 1.0;
            for (std::size_t b = 0; b < B; ++b) acc *= 1.0 - qm(p, b) * (1.0 - r(c, b));
            y(c, p) = acc;
        }
    }
#pragma omp parallel for collapse(2) schedule(static) if (C* B >= 64)
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t b = 0; b < B; ++b) {
            double invest = 0.0;
            for (std::size_t p = 0; p < P; ++p) invest += share(p, b) * y(c, p);
            out(c, b) = params.gamma * (1.0 - r(c, b)) * invest -
                        params.delta * dep[b] * r(c, b);
        }
    }
}

Matrix growth_rate_multi(const CapabilityRequirements& q, const Endowments& r,
                         const ModelParams& params) {
    if (q.capabilities() != r.capabilities())
        throw std::invalid_argument("capability axis mismatch: requirements have B = " +
                                    std::to_string(q.capabilities()) + ", endowments have B = " +
                                    std::to_string(r.capabilities()));
    Matrix out(r.economies(), r.capabilities());
    growth_rhs(q, r.r(), params, out);
    return out;
}

RiccatiCoefficients coefficients_multi(const CapabilityRequirements& q, const Endowments& r,
                                       std::size_t c, std::size_t b, const ModelParams& params) {
    check_cell(q, r, c, b);
    const std::size_t P = q.activities();
    const Matrix& qm = q.q();
    const Matrix& share = q.share();

    double weighted = 0.0;    // sum_p q_pb Q_pb E_cpb
    double slack = 0.0;       // sum_p (1 - q_pb) Q_pb E_cpb
    double dep_weight = 0.0;  // sum_p q_pb
    for (std::size_t p = 0; p < P; ++p) {
        const double e = complement(q, r, c, p, b);
        const double qe = share(p, b) * e;
        weighted += qm(p, b) * qe;
        slack += (1.0 - qm(p, b)) * qe;
        dep_weight += qm(p, b);
    }
    return {-params.gamma * weighted,
            params.gamma * (weighted - slack) - params.delta * dep_weight,
            params.gamma * slack};
}

RegimeClassification argmax_growth_multi(const CapabilityRequirements& q, const Endowments& r,
                                         std::size_t c, std::size_t b,
                                         const ModelParams& params) {
    const RiccatiCoefficients k = coefficients_multi(q, r, c, b, params);
    RegimeClassification out;
    out.q_crit = critical_intensity(params);
    if (k.a == 0.0 || k.b <= 0.0) {
        out.r_star = 0.0;  // depreciation dominates (or nothing uses b here)
        out.regime = Regime::unconditional_convergence;
        return out;
    }
    out.r_star = std::clamp(-k.b / (2.0 * k.a), 0.0, 1.0);
    out.regime = out.r_star > 0.0 ? Regime::conditional_convergence
                                  : Regime::unconditional_convergence;
    return out;
}

std::vector<SteadyState> steady_states(const RiccatiCoefficients& k) {
    constexpr double edge_tol = 1e-9;
    if (k.a == 0.0 && k.b == 0.0)
        throw std::invalid_argument("steady_states: degenerate law (a = 0 and b = 0)");

    auto slope = [&k](double r) { return 2.0 * k.a * r + k.b; };
    std::vector<double> roots;
    if (k.a == 0.0) {
        roots.push_back(-k.c / k.b);
    } else {
        const double disc = k.b * k.b - 4.0 * k.a * k.c;
        if (disc < 0.0) return {};  // cannot arise from model coefficients (a < 0, c >= 0)
        const double sq = std::sqrt(disc);
        roots.push_back((-k.b - sq) / (2.0 * k.a));
        if (sq > 0.0) roots.push_back((-k.b + sq) / (2.0 * k.a));
        std::sort(roots.begin(), roots.end());
    }

    std::vector<SteadyState> out;
    for (double root : roots) {
        if (root < -edge_tol || root > 1.0 + edge_tol) continue;
        out.push_back({std::clamp(root, 0.0, 1.0), slope(root) < 0.0});
    }
    return out;
}

}  // namespace capdyn
