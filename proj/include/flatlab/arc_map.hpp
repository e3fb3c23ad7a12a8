#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "flatlab/util.hpp"

namespace flatlab {

/**
 * Monotone map between the round polar radius r and the arc-length radius
 * s(r) = int_0^r e^{f(t)} dt of an axisymmetric conformal metric. Stored as
 * cubic Hermite segments with the exact derivative s'(r) = e^{f(r)}, so both
 * directions evaluate to near machine precision.
 */
class ArcLengthMap {
public:
    ArcLengthMap(std::function<double(double)> f_of_r, double r_max, int segments = 4096)
        : f_(std::move(f_of_r)), r_max_(r_max), n_(segments) {
        r_.resize(n_ + 1);
        s_.resize(n_ + 1);
        d_.resize(n_ + 1);
        double h = r_max_ / n_;
        r_[0] = 0.0;
        s_[0] = 0.0;
        d_[0] = std::exp(f_(0.0));
        for (int i = 1; i <= n_; ++i) {
            r_[i] = i * h;
            d_[i] = std::exp(f_(r_[i]));
            s_[i] = s_[i - 1] +
                    gauss_legendre([this](double t) { return std::exp(f_(t)); }, r_[i - 1], r_[i], 16);
        }
    }

    double r_max() const { return r_max_; }
    double s_max() const { return s_.back(); }
    double radial_speed(double r) const { return std::exp(f_(r)); }

    double s_of_r(double r) const {
        if (r <= 0.0) return 0.0;
        if (r >= r_max_) return s_.back();
        double h = r_max_ / n_;
        int i = std::min<int>(static_cast<int>(r / h), n_ - 1);
        return hermite(r, r_[i], r_[i + 1], s_[i], s_[i + 1], d_[i], d_[i + 1]);
    }

    double r_of_s(double s) const {
        if (s <= 0.0) return 0.0;
        if (s >= s_.back()) return r_max_;
        int lo = 0, hi = n_;
        while (hi - lo > 1) {
            int mid = (lo + hi) / 2;
            (s_[mid] <= s ? lo : hi) = mid;
        }
        double r = r_[lo] + (s - s_[lo]) / d_[lo];
        for (int iter = 0; iter < 4; ++iter) {
            double val = hermite(r, r_[lo], r_[lo + 1], s_[lo], s_[lo + 1], d_[lo], d_[lo + 1]);
            r -= (val - s) / std::exp(f_(r));
            r = std::clamp(r, r_[lo], r_[lo + 1]);
        }
        return r;
    }

private:
    static double hermite(double x, double x0, double x1, double y0, double y1, double m0,
                          double m1) {
        double h = x1 - x0;
        double t = (x - x0) / h;
        double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 +
               (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * m1;
    }

    std::function<double(double)> f_;
    double r_max_;
    int n_;
    std::vector<double> r_, s_, d_;
};

} // namespace flatlab
