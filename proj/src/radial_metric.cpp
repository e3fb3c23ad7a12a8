#include "flatlab/radial_metric.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "flatlab/arc_map.hpp"
#include "flatlab/cutoff.hpp"
#include "flatlab/util.hpp"

namespace flatlab {

RadialMetric round_radial(double rho_max, int dim) {
    RadialMetric g;
    g.rho_max = rho_max;
    g.dim = dim;
    g.angular = [](double r, double) {
        double s = std::sin(r);
        return s * s;
    };
    return g;
}

RadialMetric scaled_round_radial(double tau, double rho_max, int dim) {
    if (tau <= 0.0) throw std::invalid_argument("scaled_round_radial: tau must be positive");
    RadialMetric g;
    g.rho_max = rho_max;
    g.dim = dim;
    g.angular = [tau](double r, double) {
        double s = std::sin(r / tau);
        return tau * tau * s * s;
    };
    return g;
}

RadialMetric perturbed_round_radial(double beta, double rho_max, int dim) {
    RadialMetric g;
    g.rho_max = rho_max;
    g.dim = dim;
    g.angular = [beta](double r, double theta) {
        double s = std::sin(r);
        return s * s * std::exp(2.0 * beta * s * s * std::sin(theta));
    };
    return g;
}

double conformal_cap_arc_radius(const std::function<double(double)>& f_of_r, double r) {
    return gauss_legendre([&](double t) { return std::exp(f_of_r(t)); }, 0.0, r, 64);
}

RadialMetric axisymmetric_conformal_cap(const std::function<double(double)>& f_of_r,
                                        double rho_max, int dim) {
    // Build the table out to the round radius whose arc length covers rho_max.
    double r_max = rho_max;
    while (conformal_cap_arc_radius(f_of_r, r_max) < rho_max && r_max < 3.0) r_max *= 1.125;
    auto map = std::make_shared<ArcLengthMap>(f_of_r, r_max);
    if (map->s_max() < rho_max)
        throw std::invalid_argument("axisymmetric_conformal_cap: rho_max beyond chart range");
    RadialMetric g;
    g.rho_max = rho_max;
    g.dim = dim;
    g.angular = [map, f_of_r](double s, double) {
        double r = map->r_of_s(s);
        double sn = std::sin(r);
        return std::exp(2.0 * f_of_r(r)) * sn * sn;
    };
    return g;
}

RadialMetric mollify_ball_metric(const RadialMetric& g, double rho) {
    if (rho > g.rho_max)
        throw std::invalid_argument("mollify_ball_metric: rho exceeds rho_max of the metric");
    if (rho <= 0.0) throw std::invalid_argument("mollify_ball_metric: rho must be positive");
    RadialMetric out;
    out.center = g.center;
    out.rho_max = g.rho_max;
    out.dim = g.dim;
    auto base = g.angular;
    out.angular = [base, rho](double r, double theta) {
        double sn = std::sin(r);
        double round = sn * sn;
        if (r <= 0.9 * rho) return round;
        if (r >= rho) return base(r, theta);
        double psi = cutoff_psi(r, rho);
        return psi * (base(r, theta) - round) + round;
    };
    return out;
}

namespace {

/// C2-on-the-sphere seminorm of a difference sampled at fixed radius.
double sphere_c2_at_radius(const std::function<double(double)>& diff_of_theta, int theta_samples,
                           double h) {
    double worst = 0.0;
    for (int k = 0; k < theta_samples; ++k) {
        double theta = (2.0 * M_PI * k) / theta_samples;
        double f0 = diff_of_theta(theta);
        double fp = diff_of_theta(theta + h);
        double fm = diff_of_theta(theta - h);
        double d1 = (fp - fm) / (2.0 * h);
        double d2 = (fp - 2.0 * f0 + fm) / (h * h);
        worst = std::max(worst, std::fabs(f0) + std::fabs(d1) + std::fabs(d2));
    }
    return worst;
}

} // namespace

double metric_c2_deviation(const RadialMetric& g1, const RadialMetric& g2, double r_lo,
                           double r_hi, const C2DeviationOptions& opts) {
    if (!(r_lo >= 0.0) || !(r_hi > r_lo))
        throw std::invalid_argument("metric_c2_deviation: bad radius interval");
    if (opts.r_samples < 2) throw std::invalid_argument("metric_c2_deviation: need >= 2 radii");
    double worst = 0.0;
    for (int i = 0; i < opts.r_samples; ++i) {
        double r = r_lo + (r_hi - r_lo) * i / (opts.r_samples - 1);
        auto diff = [&](double theta) { return g1(r, theta) - g2(r, theta); };
        worst = std::max(worst, sphere_c2_at_radius(diff, opts.theta_samples, opts.theta_step));
        if (!std::isfinite(worst))
            throw std::runtime_error("metric_c2_deviation: non-finite metric evaluation");
    }
    return worst;
}

SphereCheckReport geodesic_sphere_check(const RadialMetric& g, double eps, double tol) {
    if (!(eps > 0.0) || eps >= g.rho_max)
        throw std::invalid_argument("geodesic_sphere_check: eps must lie in (0, rho_max)");
    auto diff = [&](double theta) { return 1.0 - g(eps, theta) / (eps * eps); };
    SphereCheckReport rep;
    rep.deviation = sphere_c2_at_radius(diff, 32, 1e-3);
    rep.allowance = eps * eps * (1.0 + tol);
    rep.pass = rep.deviation <= rep.allowance;
    return rep;
}

} // namespace flatlab
