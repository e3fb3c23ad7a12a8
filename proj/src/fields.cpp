#include "flatlab/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace flatlab {

double SphereMetricField::arc_length(const V3& a, const V3& b, int quad_points) const {
    double omega = unit_angle(a, b);
    if (omega == 0.0) return 0.0;
    double sin_omega = std::sin(omega);
    auto gamma = [&](double t) { return (a * std::sin((1.0 - t) * omega) + b * std::sin(t * omega)) * (1.0 / sin_omega); };
    auto dgamma = [&](double t) {
        return (a * (-omega * std::cos((1.0 - t) * omega)) + b * (omega * std::cos(t * omega))) *
               (1.0 / sin_omega);
    };
    return gauss_legendre([&](double t) { return speed(gamma(t), dgamma(t)); }, 0.0, 1.0,
                          quad_points);
}

AxisymmetricBlendedField::AxisymmetricBlendedField(double amplitude, double rho_north,
                                                   double rho_south)
    : amp_(amplitude) {
    auto make_cap = [&](int sign, double rho) {
        Cap cap;
        cap.pole = {0.0, 0.0, static_cast<double>(sign)};
        cap.sign = sign;
        cap.rho = rho;
        auto f_of_r = [amplitude, sign](double r) { return amplitude * sign * std::cos(r); };
        // charted out to half the sphere; plenty for any mollified ball
        cap.map = std::make_shared<ArcLengthMap>(f_of_r, 0.5 * M_PI);
        RadialMetric raw = axisymmetric_conformal_cap(f_of_r, cap.map->s_max());
        cap.model = rho > 0.0 ? mollify_ball_metric(raw, rho) : raw;
        cap.s_extent = cap.map->s_max();
        if (rho > cap.s_extent)
            throw std::invalid_argument("mollification radius exceeds the polar chart");
        return cap;
    };
    north_ = make_cap(+1, rho_north);
    south_ = make_cap(-1, rho_south);
}

double AxisymmetricBlendedField::arc_of_round_radius(int pole_sign, double r) const {
    return (pole_sign > 0 ? north_ : south_).map->s_of_r(r);
}

double AxisymmetricBlendedField::round_radius_of_arc(int pole_sign, double s) const {
    return (pole_sign > 0 ? north_ : south_).map->r_of_s(s);
}

const RadialMetric& AxisymmetricBlendedField::cap_model(int pole_sign) const {
    return (pole_sign > 0 ? north_ : south_).model;
}

double AxisymmetricBlendedField::cap_speed(const Cap& cap, const V3& x, const V3& v) const {
    double r = unit_angle(x, cap.pole);
    double sin_r = std::sin(r);
    double v2 = dot(v, v);
    if (sin_r < 1e-9) {
        // at the pole every direction is radial
        return cap.map->radial_speed(r) * std::sqrt(v2);
    }
    double r_dot = -dot(v, cap.pole) / sin_r;
    double ang2 = std::max(0.0, (v2 - r_dot * r_dot)) / (sin_r * sin_r); // theta_dot^2
    double s = cap.map->s_of_r(r);
    double s_dot = cap.map->radial_speed(r) * r_dot;
    double a = cap.model(s, 0.0); // axisymmetric: no theta dependence
    return std::sqrt(s_dot * s_dot + a * ang2);
}

double AxisymmetricBlendedField::speed(const V3& x, const V3& v) const {
    // Inside a mollified ball the polar blend applies; elsewhere the cap
    // formula and the conformal formula agree, so prefer the cheap one.
    if (north_.rho > 0.0) {
        double r = unit_angle(x, north_.pole);
        if (north_.map->s_of_r(r) < north_.rho) return cap_speed(north_, x, v);
    }
    if (south_.rho > 0.0) {
        double r = unit_angle(x, south_.pole);
        if (south_.map->s_of_r(r) < south_.rho) return cap_speed(south_, x, v);
    }
    return std::exp(amp_ * x.z) * norm(v);
}

} // namespace flatlab
