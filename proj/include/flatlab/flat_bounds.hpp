#pragma once

#include <string>

namespace flatlab {

/**
 * Inputs of the subregion comparison estimate: two spaces with
 * diffeomorphic subregions U_1, U_2 whose metrics agree up to the
 * (1 + eps)^2 sandwich, their diameters, the sup distance discrepancy
 * lambda, and the volume data of the regions, boundaries and excesses.
 */
struct LakzianSormaniInput {
    int n = 3;
    double eps_bilip = 0.0;
    double D_U1 = 0.0, D_U2 = 0.0;
    double lambda = 0.0;
    double vol_U1 = 0.0, vol_U2 = 0.0;
    double vol_bdry_U1 = 0.0, vol_bdry_U2 = 0.0;
    double vol_excess_1 = 0.0, vol_excess_2 = 0.0;
};

struct FlatBoundReport {
    double a = 0.0;
    double h = 0.0;
    double h_bar = 0.0;
    double bound = 0.0;
    std::string provenance;
};

/// Floor on the free parameter a: (arccos((1+eps)^-1) / pi) * max(D_U1, D_U2).
double lakzian_sormani_a_floor(const LakzianSormaniInput& in);

/**
 * Flat-distance upper bound between the two spaces:
 *   h    = sqrt(lambda (max(D_U1, D_U2) + lambda / 4))
 *   hbar = max(h, sqrt(eps^2 + 2 eps) D_U1, sqrt(eps^2 + 2 eps) D_U2)
 *   bound = (2 hbar + a)(vol_U1 + vol_U2 + vol_bdry_U1 + vol_bdry_U2)
 *           + vol_excess_1 + vol_excess_2
 * Requires a strictly above its floor; formulas are evaluated exactly as
 * written so results are reproducible bit-for-bit.
 */
FlatBoundReport lakzian_sormani_bound(const LakzianSormaniInput& in, double a);

/// Picks a = 1.0001 * floor (or a tiny positive value when the floor is 0).
FlatBoundReport lakzian_sormani_bound_auto(const LakzianSormaniInput& in);

/// Uniform-convergence flat bound 2^((n+3)/2) alpha^(n+1) mass eps.
double hls_bound(int n, double alpha, double mass, double eps_unif);

/// String-space limit bound: hls with alpha = 1/c and eps = 12 eps_net.
double string_limit_bound(double eps_net, double c, double mass, int n);

enum class PipeDominantTerm { SqrtRho, Linear, Quadratic };

struct PipeBoundReport {
    double value = 0.0;
    double term_sqrt = 0.0, term_linear = 0.0, term_quadratic = 0.0;
    PipeDominantTerm dominant = PipeDominantTerm::SqrtRho;
};

/// Composite single-pair surgery bound A_T1 sqrt(rho) + A_T2 rho + A_T3 rho^2.
PipeBoundReport pipe_bound(double rho, double A_T1, double A_T2, double A_T3);

struct TunnelsToStringsReport {
    double raw_sum = 0.0;              // K * per_surgery_bound
    double normalized_constant = 0.0;  // raw_sum / sqrt(eps)
    std::size_t K = 0;
    std::size_t N = 0;
};

/// Sums per-surgery bounds over the K = N(N-1)/2 tunnel/string swaps and
/// reports the sqrt(eps)-normalized constant the sum collapses to when the
/// radii follow eps / N^4. K must be a triangular number.
TunnelsToStringsReport tunnels_to_strings_bound(double eps, std::size_t K,
                                                double per_surgery_bound);

} // namespace flatlab
