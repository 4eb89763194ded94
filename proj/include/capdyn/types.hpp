#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "capdyn/matrix.hpp"

namespace capdyn {

/// Requirement intensities q_pb (activities x capabilities) together with the
/// derived quantities the dynamics keep asking for:
///   row_sums      q_p = sum_b q_pb
///   share         Q_pb = q_pb / q_p (0 when q_p = 0, so all-zero rows stay valid)
///   column_sums   sum_p q_pb, the depreciation weight of capability b
///   column_means  <q_b>
///   used_counts   number of capabilities with q_pb > 0 per activity
/// Every entry must lie in [0,1]; construction throws otherwise, naming the
/// offending cells.
class CapabilityRequirements {
public:
    explicit CapabilityRequirements(Matrix q,
                                    std::vector<std::string> activity_labels = {},
                                    std::vector<std::string> capability_labels = {});

    std::size_t activities() const { return q_.rows(); }
    std::size_t capabilities() const { return q_.cols(); }

    const Matrix& q() const { return q_; }
    const Matrix& share() const { return share_; }
    const std::vector<double>& row_sums() const { return row_sums_; }
    const std::vector<double>& column_sums() const { return column_sums_; }
    const std::vector<double>& column_means() const { return column_means_; }
    const std::vector<std::size_t>& used_counts() const { return used_counts_; }

    const std::vector<std::string>& activity_labels() const { return activity_labels_; }
    const std::vector<std::string>& capability_labels() const { return capability_labels_; }

private:
    Matrix q_;
    Matrix share_;
    std::vector<double> row_sums_;
    std::vector<double> column_sums_;
    std::vector<double> column_means_;
    std::vector<std::size_t> used_counts_;
    std::vector<std::string> activity_labels_;
    std::vector<std::string> capability_labels_;
};

/// Endowment probabilities r_cb (economies x capabilities), each in [0,1].
class Endowments {
public:
    explicit Endowments(Matrix r,
                        std::vector<std::string> economy_labels = {},
                        std::vector<std::string> capability_labels = {});

    std::size_t economies() const { return r_.rows(); }
    std::size_t capabilities() const { return r_.cols(); }

    const Matrix& r() const { return r_; }

    const std::vector<std::string>& economy_labels() const { return economy_labels_; }
    const std::vector<std::string>& capability_labels() const { return capability_labels_; }

private:
    Matrix r_;
    std::vector<std::string> economy_labels_;
    std::vector<std::string> capability_labels_;
};

/// Investment rate gamma in (0,1] and depreciation rate delta >= 0.
struct ModelParams {
    ModelParams(double gamma_in, double delta_in);

    double gamma;
    double delta;
};

/// Default labels "p0..", "b0..", "c0.." used when a matrix is built in code.
std::vector<std::string> default_labels(char prefix, std::size_t n);

}  // namespace capdyn
