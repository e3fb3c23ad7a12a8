#pragma once

namespace flatlab {

/**
 * Parametric model of a scalar-curvature-controlled tunnel joining two
 * geodesic spheres of radius delta: a warped product dr^2 + w(r)^2 g_1^{n-1}
 * whose ends open to radius delta around a narrow waist. Only the bounds
 * matter downstream: ell < L < A_model delta + ell for the diameter,
 * vol < A_model (delta^n + ell delta^{n-1}) for the volume, and the scalar
 * floor kappa - 1/j recorded for the curvature ledger.
 */
struct TunnelModel {
    double delta = 0.0;   // neck-scale radius; ends open to exactly delta
    double ell = 0.0;     // target length
    double L = 0.0;       // realized diameter (axial length ell + 2 delta)
    double A_model = 4.0; // the constant both bounds are checked against
    double vol = 0.0;     // n-volume of the warped product
    double scalar_floor = 0.0; // kappa - 1/j
    int dim = 3;
    int j = 1;
    double kappa = 0.0;
    double waist = 0.0; // waist fraction of delta

    /// Warp radius at axial position r in [0, L].
    double radius_at(double r) const;
};

/// Builds the model and verifies both bounds; throws on violation.
TunnelModel tunnel_make(double delta, double ell, int n, double kappa, int j,
                        double A_model = 4.0);

/// Surface measure of the unit (n-1)-sphere.
double unit_sphere_area(int n_minus_1);

} // namespace flatlab
