#pragma once

#include <string>
#include <vector>

namespace flatlab {

/**
 * Bookkeeping of analytic scalar-curvature floors per region of a glued
 * space. The ledger floor is the minimum over contributions; no curvature
 * is computed from samples, the floors are inputs from the construction.
 */
class ScalarCurvatureLedger {
public:
    void add(const std::string& region, double floor);
    double floor() const;
    const std::vector<std::pair<std::string, double>>& contributions() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<std::pair<std::string, double>> entries_;
};

/// Scalar curvature of the rescaled metric C^2 g: R / C^2.
double scale_scalar_curvature(double R, double C);

} // namespace flatlab
