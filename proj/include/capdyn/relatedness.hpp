#pragma once

#include <cstddef>
#include <vector>

#include "capdyn/types.hpp"

namespace capdyn {

/// Nonnegative per-activity weights; at least one must be positive.
struct RelatednessWeights {
    explicit RelatednessWeights(std::vector<double> weights);
    static RelatednessWeights uniform(std::size_t n);

    std::vector<double> w;
};

/// Capability complementarity matrix C_bb' = sum_p W_p q_pb q_pb'.
/// Symmetric and nonnegative. The diagonal (weighted sum of squared
/// intensities) is reported for completeness but carries no pairwise meaning.
Matrix complementarity_matrix(const CapabilityRequirements& q, const RelatednessWeights& w);

/// Second cross-partial of output, d2 Y_cp / dr_cb dr_cb' = E_cpbb' q_pb q_pb'.
/// Requires b != b_other.
double cross_partial_output(const CapabilityRequirements& q, const Endowments& r,
                            std::size_t c, std::size_t p, std::size_t b, std::size_t b_other);

/// How much the accumulation rate of capability b speeds up with the presence
/// of capability b': d/dr_cb' (dr_cb/dt) = gamma (1 - r_cb) sum_p E_cpb' q_pb q_pb' / q_p.
/// Activities with q_p = 0 contribute nothing. Always >= 0.
double growth_coupling(const CapabilityRequirements& q, const Endowments& r,
                       const ModelParams& params,
                       std::size_t c, std::size_t b, std::size_t b_other);

}  // namespace capdyn
