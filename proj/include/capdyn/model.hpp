#pragma once

#include <cstddef>

#include "capdyn/types.hpp"

namespace capdyn {

/// Weak-link production function, Y_cp = prod_b (1 - q_pb (1 - r_cb)).
/// One missing required capability collapses the whole product.
/// Parallel over the output cells; every cell is an independent product
/// evaluated in capability index order, so results do not depend on the
/// thread count.
Matrix output(const CapabilityRequirements& q, const Endowments& r);

/// Complementarity term E_cpb = prod_{b' != b} (1 - q_pb' (1 - r_cb')):
/// the availability factor contributed by every capability except b.
double complement(const CapabilityRequirements& q, const Endowments& r,
                  std::size_t c, std::size_t p, std::size_t b);

/// E_cpbb' = prod over capabilities other than b and b'. Requires b != b_other.
double pair_complement(const CapabilityRequirements& q, const Endowments& r,
                       std::size_t c, std::size_t p, std::size_t b, std::size_t b_other);

/// dY_cp / dr_cb = q_pb E_cpb  (always >= 0).
double output_grad_r(const CapabilityRequirements& q, const Endowments& r,
                     std::size_t c, std::size_t p, std::size_t b);

/// dY_cp / dq_pb = -(1 - r_cb) E_cpb  (always <= 0).
double output_grad_q(const CapabilityRequirements& q, const Endowments& r,
                     std::size_t c, std::size_t p, std::size_t b);

/// Output velocity under exogenous endowment and requirement velocities:
///   dY_cp/dt = sum_b E_cpb (q_pb dr_cb/dt - (1 - r_cb) dq_pb/dt).
/// dq_dt is an exogenous input; nothing in this library evolves it.
Matrix output_growth(const CapabilityRequirements& q, const Endowments& r,
                     const Matrix& dr_dt, const Matrix& dq_dt);

}  // namespace capdyn
