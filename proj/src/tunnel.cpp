#include "flatlab/tunnel.hpp"

#include <cmath>
#include <stdexcept>

#include "flatlab/cutoff.hpp"
#include "flatlab/util.hpp"

namespace flatlab {

double unit_sphere_area(int n_minus_1) {
    if (n_minus_1 < 1) throw std::invalid_argument("unit_sphere_area: dimension must be >= 1");
    double n = n_minus_1 + 1;
    return 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
}

double TunnelModel::radius_at(double r) const {
    double edge = std::min(r, L - r);
    if (edge < 0.0) throw std::domain_error("TunnelModel::radius_at: r outside [0, L]");
    double ramp_width = std::min(delta / (dim + 1), L / 4.0);
    double t = edge / ramp_width;
    double opening = t >= 1.0 ? 0.0 : 1.0 - cutoff_phi(t);
    return delta * (waist + (1.0 - waist) * opening);
}

TunnelModel tunnel_make(double delta, double ell, int n, double kappa, int j, double A_model) {
    if (!(delta > 0.0)) throw std::invalid_argument("tunnel_make: delta must be positive");
    if (ell < 0.0) throw std::invalid_argument("tunnel_make: ell must be nonnegative");
    if (n < 3) throw std::invalid_argument("tunnel_make: dimension must be >= 3");
    if (j < 1) throw std::invalid_argument("tunnel_make: j must be >= 1");
    if (!(A_model > 2.0)) throw std::invalid_argument("tunnel_make: A_model must exceed 2");

    TunnelModel t;
    t.delta = delta;
    t.ell = ell;
    t.L = ell + 2.0 * delta;
    t.A_model = A_model;
    t.dim = n;
    t.j = j;
    t.kappa = kappa;
    t.scalar_floor = kappa - 1.0 / j;
    t.waist = 0.05;

    double area = unit_sphere_area(n - 1);
    t.vol = area * gauss_legendre([&](double r) { return std::pow(t.radius_at(r), n - 1); }, 0.0,
                                  t.L, 64);

    if (!(t.ell < t.L && t.L < A_model * delta + ell))
        throw std::logic_error("tunnel_make: diameter bound violated");
    double vol_bound = A_model * (std::pow(delta, n) + ell * std::pow(delta, n - 1));
    if (!(t.vol < vol_bound)) throw std::logic_error("tunnel_make: volume bound violated");
    return t;
}

} // namespace flatlab
