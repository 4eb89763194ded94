#pragma once

#include "capdyn/types.hpp"

namespace capdyn::ref {

// Serial reference implementations of the parallel kernels. Same arithmetic,
// same evaluation order, no pragmas: results must match the parallel versions
// bit for bit. Kept for the consistency tests and the benchmark baseline.

Matrix output(const CapabilityRequirements& q, const Endowments& r);

Matrix growth_rate_multi(const CapabilityRequirements& q, const Endowments& r,
                         const ModelParams& params);

void growth_rhs(const CapabilityRequirements& q, const Matrix& r,
                const ModelParams& params, Matrix& out);

Matrix complementarity_matrix(const CapabilityRequirements& q, const std::vector<double>& w);

}  // namespace capdyn::ref
