#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "flatlab/arc_map.hpp"
#include "flatlab/radial_metric.hpp"
#include "flatlab/util.hpp"

namespace flatlab {

/**
 * A Riemannian metric on the unit 2-sphere chart, evaluated as the length
 * of a tangent vector. Positions are unit vectors, tangents satisfy
 * v . x = 0 (slerp derivatives do). Edge lengths are Gauss quadratures of
 * speed() along great-circle arcs of the chart.
 */
class SphereMetricField {
public:
    virtual ~SphereMetricField() = default;
    virtual double speed(const V3& x, const V3& v) const = 0;

    double arc_length(const V3& a, const V3& b, int quad_points = 8) const;
};

/// Metric tau^2 * g_rd (sphere of radius tau).
class RoundField final : public SphereMetricField {
public:
    explicit RoundField(double tau) : tau_(tau) {}
    double speed(const V3&, const V3& v) const override { return tau_ * norm(v); }

private:
    double tau_;
};

/// Conformal metric e^{2 f} g_rd with an arbitrary smooth f.
class ConformalField final : public SphereMetricField {
public:
    explicit ConformalField(std::function<double(const V3&)> f) : f_(std::move(f)) {}
    double speed(const V3& x, const V3& v) const override { return std::exp(f_(x)) * norm(v); }

private:
    std::function<double(const V3&)> f_;
};

/**
 * The axisymmetric conformal metric e^{2 a x3} g_rd, with optional
 * mollification toward the round form inside geodesic balls around the two
 * poles +-e3. Around each pole the metric is exactly ds^2 + a(s) dtheta^2
 * in arc-length polar coordinates (meridians are geodesics by symmetry),
 * so the blend below is the polar-form construction verbatim; outside the
 * mollified balls the field coincides with the plain conformal metric.
 */
class AxisymmetricBlendedField final : public SphereMetricField {
public:
    /// rho_north / rho_south are mollification radii in arc-length units;
    /// zero disables the blend at that pole.
    AxisymmetricBlendedField(double amplitude, double rho_north, double rho_south);

    double speed(const V3& x, const V3& v) const override;

    double amplitude() const { return amp_; }
    double conformal_factor(const V3& x) const { return std::exp(amp_ * x.z); }

    /// Arc radius from the given pole (+1 north, -1 south) to chart radius r.
    double arc_of_round_radius(int pole_sign, double r) const;
    double round_radius_of_arc(int pole_sign, double s) const;

    /// Polar model of this metric around a pole (mollified if enabled).
    const RadialMetric& cap_model(int pole_sign) const;

private:
    struct Cap {
        V3 pole;
        int sign = +1;
        double rho = 0.0;     // mollification radius (s-units), 0 = none
        double s_extent = 0.0; // chart handled below this arc radius
        std::shared_ptr<ArcLengthMap> map;
        RadialMetric model; // angular coefficient a~(s), includes the blend
    };

    double cap_speed(const Cap& cap, const V3& x, const V3& v) const;

    double amp_;
    Cap north_, south_;
};

} // namespace flatlab
