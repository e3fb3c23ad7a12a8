#pragma once

#include <vector>

namespace flatlab {

struct SlopeFit {
    std::vector<std::pair<double, double>> log_pairs; // (log x, log y)
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least-squares line through (log x, log y); requires >= 3 strictly
/// positive pairs.
SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace flatlab
