#include "flatlab/scalar_ledger.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace flatlab {

void ScalarCurvatureLedger::add(const std::string& region, double floor) {
    entries_.emplace_back(region, floor);
}

double ScalarCurvatureLedger::floor() const {
    if (entries_.empty()) throw std::logic_error("scalar ledger has no contributions");
    double f = std::numeric_limits<double>::infinity();
    for (const auto& [_, v] : entries_) f = std::min(f, v);
    return f;
}

double scale_scalar_curvature(double R, double C) {
    if (!(C > 0.0)) throw std::invalid_argument("scale_scalar_curvature: C must be positive");
    return R / (C * C);
}

} // namespace flatlab
