#include "capdyn/relatedness.hpp"

#include <stdexcept>
#include <string>

#include "capdyn/model.hpp"

namespace capdyn {

RelatednessWeights::RelatednessWeights(std::vector<double> weights) : w(std::move(weights)) {
    bool any_positive = false;
    for (std::size_t p = 0; p < w.size(); ++p) {
        if (w[p] < 0.0)
            throw std::invalid_argument("weight " + std::to_string(p) + " = " +
                                        std::to_string(w[p]) + " is negative");
        if (w[p] > 0.0) any_positive = true;
    }
    if (!any_positive) throw std::invalid_argument("weights: at least one must be positive");
}

RelatednessWeights RelatednessWeights::uniform(std::size_t n) {
    return RelatednessWeights(std::vector<double>(n, 1.0));
}

Matrix complementarity_matrix(const CapabilityRequirements& q, const RelatednessWeights& w) {
    if (w.w.size() != q.activities())
        throw std::invalid_argument("weights size " + std::to_string(w.w.size()) +
                                    " does not match activity count " +
                                    std::to_string(q.activities()));
    const std::size_t P = q.activities(), B = q.capabilities();
    const Matrix& qm = q.q();
    Matrix out(B, B);
#pragma omp parallel for collapse(2) schedule(static) if (B* B >= 64)
    for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t b2 = 0; b2 < B; ++b2) {
            double sum = 0.0;
            // w * (q1 * q2): the inner product is commutative bit for bit, so
            // the matrix comes out exactly symmetric.
            for (std::size_t p = 0; p < P; ++p) sum += w.w[p] * (qm(p, b) * qm(p, b2));
            out(b, b2) = sum;
        }
    }
    return out;
}

double cross_partial_output(const CapabilityRequirements& q, const Endowments& r,
                            std::size_t c, std::size_t p, std::size_t b, std::size_t b_other) {
    return pair_complement(q, r, c, p, b, b_other) * q.q()(p, b) * q.q()(p, b_other);
}

double growth_coupling(const CapabilityRequirements& q, const Endowments& r,
                       const ModelParams& params,
                       std::size_t c, std::size_t b, std::size_t b_other) {
    if (b == b_other)
        throw std::invalid_argument("growth_coupling: capabilities must differ, both are " +
                                    std::to_string(b));
    const std::size_t P = q.activities();
    const Matrix& qm = q.q();
    double sum = 0.0;
    for (std::size_t p = 0; p < P; ++p) {
        const double q_p = q.row_sums()[p];
        if (q_p == 0.0) continue;  // the activity invests in nothing
        sum += complement(q, r, c, p, b_other) * qm(p, b) * qm(p, b_other) / q_p;
    }
    return params.gamma * (1.0 - r.r()(c, b)) * sum;
}

}  // namespace capdyn
