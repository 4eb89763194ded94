#pragma once

#include <vector>

namespace capdyn {

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either input has zero rank variance.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Median (average of the two middle elements for even sizes).
double median(std::vector<double> v);

}  // namespace capdyn
