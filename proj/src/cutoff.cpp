#include "flatlab/cutoff.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace flatlab {

namespace {

double bump(double s) {
    if (s <= 0.25 || s >= 0.75) return 0.0;
    return std::exp(-1.0 / (s - 0.25) - 1.0 / (0.75 - s));
}

double bump_integral(double a, double b) {
    return boost::math::quadrature::gauss<double, 64>::integrate(bump, a, b);
}

const double kBumpMass = bump_integral(0.25, 0.75);

} // namespace

double cutoff_phi(double t) {
    if (t < 0.0 || t > 1.0) throw std::domain_error("cutoff_phi: t outside [0,1]");
    if (t <= 0.25) return 0.0;
    if (t >= 0.75) return 1.0;
    double v = bump_integral(0.25, t) / kBumpMass;
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    return v;
}

double cutoff_psi(double t, double rho) {
    if (rho <= 0.0) throw std::domain_error("cutoff_psi: rho must be positive");
    const double lo = 0.9 * rho;
    // tiny slack for arguments produced by floating-point radius arithmetic
    const double slack = 1e-12 * rho;
    if (t < lo - slack || t > rho + slack)
        throw std::domain_error("cutoff_psi: t outside [9rho/10, rho]");
    double u = (10.0 / rho) * (t - lo);
    if (u < 0.0) u = 0.0;
    if (u > 1.0) u = 1.0;
    return cutoff_phi(u);
}

} // namespace flatlab
