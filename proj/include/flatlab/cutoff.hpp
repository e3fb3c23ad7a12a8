#pragma once

namespace flatlab {

/**
 * Smooth transition profile used by all metric blends: phi(t) = 0 on
 * [0, 1/4], 1 on [3/4, 1], and in between the normalized integral of the
 * bump exp(-1/(t - 1/4) - 1/(3/4 - t)). The bump is symmetric about 1/2,
 * so phi(1/2) = 1/2, and every derivative vanishes at both junctions.
 */
double cutoff_phi(double t);

/// Annulus reparametrization psi(t) = phi((10/rho) * (t - 9 rho/10)) for
/// t in [9 rho/10, rho].
double cutoff_psi(double t, double rho);

} // namespace flatlab
