#pragma once

#include <functional>
#include <string>

namespace flatlab {

/**
 * A Riemannian metric in polar form dr^2 + g_r around a center point.
 *
 * The angular part is exposed as the coefficient of g_r along a sampled
 * unit angular direction parametrized by theta: for surface charts (n = 2)
 * this is the full angular block; for n >= 3 it is the evaluation of g_r
 * on a one-parameter family of unit directions, which is what every
 * consumer here (blending, C2 norms, sphere checks) actually samples.
 *
 * Positive-definiteness on (0, rho_max] and the small-r round osculation
 * g_r / r^2 -> round are the constructor contracts of the factories below.
 */
struct RadialMetric {
    std::string center = "center";
    double rho_max = 0.0;
    int dim = 2;
    std::function<double(double r, double theta)> angular;

    double operator()(double r, double theta) const { return angular(r, theta); }
};

/// Unit round metric: g_r = sin^2(r).
RadialMetric round_radial(double rho_max, int dim = 2);

/// Sphere of radius tau (metric tau^2 * g_rd): g_r = tau^2 sin^2(r / tau),
/// r the arc radius in the scaled metric.
RadialMetric scaled_round_radial(double tau, double rho_max, int dim = 2);

/// Test metric g_r = sin^2(r) exp(2 beta sin^2(r) sin(theta)): a closed-form
/// angular perturbation that vanishes to second order at the center, so the
/// geodesic-sphere comparison below stays within its r^2 envelope.
RadialMetric perturbed_round_radial(double beta, double rho_max, int dim = 2);

/**
 * Polar model of the axisymmetric conformal metric e^{2 f(r)} g_rd around
 * its symmetry pole, rewritten in arc-length radius: with s(r) the
 * g-arc length of the meridian, the metric is exactly ds^2 + a(s) dtheta^2
 * with a(s) = e^{2 f(r(s))} sin^2(r(s)).  f is given as a function of the
 * round polar radius r.  rho_max is in s-units.
 */
RadialMetric axisymmetric_conformal_cap(const std::function<double(double)>& f_of_r,
                                        double rho_max, int dim = 2);

/// Arc radius s as a function of round radius r for the cap above.
double conformal_cap_arc_radius(const std::function<double(double)>& f_of_r, double r);

/**
 * Blends the angular part toward the round form inside radius rho:
 * round for r <= 9 rho/10, psi-interpolated on [9 rho/10, rho], unchanged
 * beyond rho.  The returned metric equals the input at r = rho and is
 * C2-continuous at both junctions because the cutoff is flat there.
 */
RadialMetric mollify_ball_metric(const RadialMetric& g, double rho);

struct C2DeviationOptions {
    int r_samples = 65;
    int theta_samples = 16;
    double theta_step = 1e-3; // central-difference step for angular derivatives
};

/**
 * Fixed C2 comparison norm between two polar metrics over [r_lo, r_hi]:
 * at each grid radius the angular parts are compared as metrics on the
 * sphere, |value| + |d/dtheta| + |d^2/dtheta^2| component-wise, and the
 * result is the sup over the radius grid. Keeping the radius fixed inside
 * the norm is what makes |psi * X| <= |X| for the blend's cutoff factor.
 */
double metric_c2_deviation(const RadialMetric& g1, const RadialMetric& g2, double r_lo,
                           double r_hi, const C2DeviationOptions& opts = {});

struct SphereCheckReport {
    double deviation = 0.0; // |g_rd - (1/eps^2) g_eps| in the fixed C2 norm
    double allowance = 0.0; // eps^2 * (1 + tol)
    bool pass = false;
};

/// Compares the rescaled induced metric on the radius-eps sphere with the
/// round metric; passes iff the deviation is within eps^2 (plus tolerance).
SphereCheckReport geodesic_sphere_check(const RadialMetric& g, double eps, double tol = 0.05);

} // namespace flatlab
