#include "capdyn/reference.hpp"

#include <stdexcept>

namespace capdyn::ref {

Matrix output(const CapabilityRequirements& q, const Endowments& r) {
    if (q.capabilities() != r.capabilities())
        throw std::invalid_argument("capability axis mismatch");
    const std::size_t C = r.economies(), P = q.activities(), B = q.capabilities();
    const Matrix& qm = q.q();
    const Matrix& rm = r.r();
    Matrix y(C, P);
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t p = 0; p < P; ++p) {
            double acc = 1.0;
            for (std::size_t b = 0; b < B; ++b) acc *= 1.0 - qm(p, b) * (1.0 - rm(c, b));
            y(c, p) = acc;
        }
    }
    return y;
}

void growth_rhs(const CapabilityRequirements& q, const Matrix& r,
                const ModelParams& params, Matrix& out) {
    const std::size_t C = r.rows(), P = q.activities(), B = q.capabilities();
    if (r.cols() != B) throw std::invalid_argument("capability axis mismatch");
    if (out.rows() != C || out.cols() != B) out = Matrix(C, B);

    const Matrix& qm = q.q();
    const Matrix& share = q.share();
    const std::vector<double>& dep = q.column_sums();

    Matrix y(C, P);
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t p = 0; p < P; ++p) {
            double acc = 1.0;
            for (std::size_t b = 0; b < B; ++b) acc *= 1.0 - qm(p, b) * (1.0 - r(c, b));
            y(c, p) = acc;
        }
    }
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
        throw std::invalid_argument("capability axis mismatch");
    Matrix out(r.economies(), r.capabilities());
    growth_rhs(q, r.r(), params, out);
    return out;
}

Matrix complementarity_matrix(const CapabilityRequirements& q, const std::vector<double>& w) {
    if (w.size() != q.activities())
        throw std::invalid_argument("weights size does not match activity count");
    const std::size_t P = q.activities(), B = q.capabilities();
    const Matrix& qm = q.q();
    Matrix out(B, B);
    for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t b2 = 0; b2 < B; ++b2) {
            double sum = 0.0;
            for (std::size_t p = 0; p < P; ++p) sum += w[p] * (qm(p, b) * qm(p, b2));
            out(b, b2) = sum;
        }
    }
    return out;
}

}  // namespace capdyn::ref
