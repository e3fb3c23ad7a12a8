#include "flatlab/slope.hpp"

#include <cmath>
#include <stdexcept>

namespace flatlab {

SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_slope: length mismatch");
    if (xs.size() < 3) throw std::invalid_argument("fit_slope: need at least 3 pairs");
    SlopeFit fit;
    fit.log_pairs.reserve(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_slope: values must be strictly positive");
        double lx = std::log(xs[i]), ly = std::log(ys[i]);
        fit.log_pairs.emplace_back(lx, ly);
        sx += lx;
        sy += ly;
    }
    double n = static_cast<double>(xs.size());
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [lx, ly] : fit.log_pairs) {
        sxx += (lx - mx) * (lx - mx);
        sxy += (lx - mx) * (ly - my);
        syy += (ly - my) * (ly - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate x values");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

} // namespace flatlab
