#include "capdyn/types.hpp"

#include <sstream>
#include <stdexcept>

namespace capdyn {

std::vector<std::string> default_labels(char prefix, std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

namespace {

void check_probability_matrix(const Matrix& m, const char* what,
                              const std::vector<std::string>& row_labels,
                              const std::vector<std::string>& col_labels) {
    std::ostringstream bad;
    int count = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {  // also rejects NaN
                if (count < 8) {
                    if (count) bad << ", ";
                    bad << "(" << row_labels[i] << ", " << col_labels[j] << ") = " << v;
                }
                ++count;
            }
        }
    }
    if (count > 0) {
        std::ostringstream msg;
        msg << what << ": " << count << " entr" << (count == 1 ? "y" : "ies")
            << " outside [0,1]: " << bad.str();
        if (count > 8) msg << ", ...";
        throw std::invalid_argument(msg.str());
    }
}

std::vector<std::string> resolve_labels(std::vector<std::string> labels, char prefix,
                                        std::size_t n, const char* what) {
    if (labels.empty()) return default_labels(prefix, n);
    if (labels.size() != n)
        throw std::invalid_argument(std::string(what) + ": label count " +
                                    std::to_string(labels.size()) + " does not match size " +
                                    std::to_string(n));
    return labels;
}

}  // namespace

CapabilityRequirements::CapabilityRequirements(Matrix q,
                                               std::vector<std::string> activity_labels,
                                               std::vector<std::string> capability_labels)
    : q_(std::move(q)) {
    activity_labels_ = resolve_labels(std::move(activity_labels), 'p', q_.rows(), "requirements");
    capability_labels_ =
        resolve_labels(std::move(capability_labels), 'b', q_.cols(), "requirements");
    check_probability_matrix(q_, "requirements", activity_labels_, capability_labels_);

    const std::size_t P = q_.rows(), B = q_.cols();
    share_ = Matrix(P, B);
    row_sums_.assign(P, 0.0);
    used_counts_.assign(P, 0);
    column_sums_.assign(B, 0.0);
    column_means_.assign(B, 0.0);

    for (std::size_t p = 0; p < P; ++p) {
        double sum = 0.0;
        std::size_t used = 0;
        for (std::size_t b = 0; b < B; ++b) {
            sum += q_(p, b);
            if (q_(p, b) > 0.0) ++used;
        }
        row_sums_[p] = sum;
        used_counts_[p] = used;
        if (sum > 0.0) {
            for (std::size_t b = 0; b < B; ++b) share_(p, b) = q_(p, b) / sum;
        }
        // sum == 0: the activity invests in nothing, the share row stays zero.
    }
    for (std::size_t b = 0; b < B; ++b) {
        double sum = 0.0;
        for (std::size_t p = 0; p < P; ++p) sum += q_(p, b);
        column_sums_[b] = sum;
        column_means_[b] = P ? sum / static_cast<double>(P) : 0.0;
    }
}

Endowments::Endowments(Matrix r, std::vector<std::string> economy_labels,
                       std::vector<std::string> capability_labels)
    : r_(std::move(r)) {
    economy_labels_ = resolve_labels(std::move(economy_labels), 'c', r_.rows(), "endowments");
    capability_labels_ =
        resolve_labels(std::move(capability_labels), 'b', r_.cols(), "endowments");
    check_probability_matrix(r_, "endowments", economy_labels_, capability_labels_);
}

ModelParams::ModelParams(double gamma_in, double delta_in) : gamma(gamma_in), delta(delta_in) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("gamma = " + std::to_string(gamma) + " outside (0, 1]");
    if (!(delta >= 0.0))
        throw std::invalid_argument("delta = " + std::to_string(delta) + " must be >= 0");
}

}  // namespace capdyn
