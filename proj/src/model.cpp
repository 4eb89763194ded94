#include "capdyn/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace capdyn {

namespace {

void check_same_capabilities(const CapabilityRequirements& q, const Endowments& r) {
    if (q.capabilities() != r.capabilities())
        throw std::invalid_argument("capability axis mismatch: requirements have B = " +
                                    std::to_string(q.capabilities()) + ", endowments have B = " +
                                    std::to_string(r.capabilities()));
}

void check_index(std::size_t value, std::size_t bound, const char* axis) {
    if (value >= bound)
        throw std::out_of_range(std::string(axis) + " index " + std::to_string(value) +
                                " out of range [0, " + std::to_string(bound) + ")");
}

inline double factor(double q, double r) { return 1.0 - q * (1.0 - r); }

}  // namespace

Matrix output(const CapabilityRequirements& q, const Endowments& r) {
    check_same_capabilities(q, r);
    const std::size_t C = r.economies(), P = q.activities(), B = q.capabilities();
    const Matrix& qm = q.q();
    const Matrix& rm = r.r();
    Matrix y(C, P);
#pragma omp parallel for collapse(2) schedule(static) if (C* P >= 64)
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t p = 0; p < P; ++p) {
            double acc = 1.0;
            for (std::size_t b = 0; b < B; ++b) acc *= factor(qm(p, b), rm(c, b));
            y(c, p) = acc;
        }
    }
    return y;
}

double complement(const CapabilityRequirements& q, const Endowments& r,
                  std::size_t c, std::size_t p, std::size_t b) {
    check_same_capabilities(q, r);
    check_index(c, r.economies(), "economy");
    check_index(p, q.activities(), "activity");
    check_index(b, q.capabilities(), "capability");
    double acc = 1.0;
    for (std::size_t b2 = 0; b2 < q.capabilities(); ++b2)
        if (b2 != b) acc *= factor(q.q()(p, b2), r.r()(c, b2));
    return acc;
}

double pair_complement(const CapabilityRequirements& q, const Endowments& r,
                       std::size_t c, std::size_t p, std::size_t b, std::size_t b_other) {
    check_same_capabilities(q, r);
    check_index(c, r.economies(), "economy");
    check_index(p, q.activities(), "activity");
    check_index(b, q.capabilities(), "capability");
    check_index(b_other, q.capabilities(), "capability");
    if (b == b_other)
        throw std::invalid_argument("pair_complement: capabilities must differ, both are " +
                                    std::to_string(b));
    double acc = 1.0;
    for (std::size_t b2 = 0; b2 < q.capabilities(); ++b2)
        if (b2 != b && b2 != b_other) acc *= factor(q.q()(p, b2), r.r()(c, b2));
    return acc;
}

double output_grad_r(const CapabilityRequirements& q, const Endowments& r,
                     std::size_t c, std::size_t p, std::size_t b) {
    return q.q()(p, b) * complement(q, r, c, p, b);
}

double output_grad_q(const CapabilityRequirements& q, const Endowments& r,
                     std::size_t c, std::size_t p, std::size_t b) {
    return -(1.0 - r.r()(c, b)) * complement(q, r, c, p, b);
}

Matrix output_growth(const CapabilityRequirements& q, const Endowments& r,
                     const Matrix& dr_dt, const Matrix& dq_dt) {
    check_same_capabilities(q, r);
    const std::size_t C = r.economies(), P = q.activities(), B = q.capabilities();
    if (dr_dt.rows() != C || dr_dt.cols() != B)
        throw std::invalid_argument("dr_dt must be " + std::to_string(C) + " x " +
                                    std::to_string(B) + ", got " + std::to_string(dr_dt.rows()) +
                                    " x " + std::to_string(dr_dt.cols()));
    if (dq_dt.rows() != P || dq_dt.cols() != B)
        throw std::invalid_argument("dq_dt must be " + std::to_string(P) + " x " +
                                    std::to_string(B) + ", got " + std::to_string(dq_dt.rows()) +
                                    " x " + std::to_string(dq_dt.cols()));

    const Matrix& qm = q.q();
    const Matrix& rm = r.r();
    Matrix dy(C, P);
#pragma omp parallel for collapse(2) schedule(static) if (C* P >= 64)
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t p = 0; p < P; ++p) {
            double total = 0.0;
            for (std::size_t b = 0; b < B; ++b) {
                double e = 1.0;
                for (std::size_t b2 = 0; b2 < B; ++b2)
                    if (b2 != b) e *= factor(qm(p, b2), rm(c, b2));
                total += e * (qm(p, b) * dr_dt(c, b) - (1.0 - rm(c, b)) * dq_dt(p, b));
            }
            dy(c, p) = total;
        }
    }
    return dy;
}

}  // namespace capdyn
