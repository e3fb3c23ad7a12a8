#include "flatlab/flat_bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "flatlab/util.hpp"

namespace flatlab {

namespace {

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0)) throw std::invalid_argument(std::string("negative input: ") + name);
}

} // namespace

double lakzian_sormani_a_floor(const LakzianSormaniInput& in) {
    return (std::acos(1.0 / (1.0 + in.eps_bilip)) / M_PI) * std::max(in.D_U1, in.D_U2);
}

FlatBoundReport lakzian_sormani_bound(const LakzianSormaniInput& in, double a) {
    require_nonnegative(in.eps_bilip, "eps_bilip");
    require_nonnegative(in.D_U1, "D_U1");
    require_nonnegative(in.D_U2, "D_U2");
    require_nonnegative(in.lambda, "lambda");
    require_nonnegative(in.vol_U1, "vol_U1");
    require_nonnegative(in.vol_U2, "vol_U2");
    require_nonnegative(in.vol_bdry_U1, "vol_bdry_U1");
    require_nonnegative(in.vol_bdry_U2, "vol_bdry_U2");
    require_nonnegative(in.vol_excess_1, "vol_excess_1");
    require_nonnegative(in.vol_excess_2, "vol_excess_2");

    double floor = lakzian_sormani_a_floor(in);
    if (!(a > floor))
        throw std::invalid_argument("lakzian_sormani_bound: a must exceed its floor " +
                                    format_double(floor));

    FlatBoundReport rep;
    rep.a = a;
    rep.h = std::sqrt(in.lambda * (std::max(in.D_U1, in.D_U2) + in.lambda / 4.0));
    double excess_factor = std::sqrt(in.eps_bilip * in.eps_bilip + 2.0 * in.eps_bilip);
    rep.h_bar = std::max(rep.h, std::max(excess_factor * in.D_U1, excess_factor * in.D_U2));
    rep.bound = (2.0 * rep.h_bar + a) *
                    (in.vol_U1 + in.vol_U2 + in.vol_bdry_U1 + in.vol_bdry_U2) +
                in.vol_excess_1 + in.vol_excess_2;
    rep.provenance = "subregion-comparison";
    return rep;
}

FlatBoundReport lakzian_sormani_bound_auto(const LakzianSormaniInput& in) {
    double floor = lakzian_sormani_a_floor(in);
    double a = floor > 0.0 ? 1.0001 * floor : 1e-9 * std::max(1.0, std::max(in.D_U1, in.D_U2));
    return lakzian_sormani_bound(in, a);
}

double hls_bound(int n, double alpha, double mass, double eps_unif) {
    if (!(alpha >= 1.0))
        throw std::invalid_argument("hls_bound: alpha must be >= 1 (two-sided sandwich)");
    require_nonnegative(mass, "mass");
    require_nonnegative(eps_unif, "eps_unif");
    if (n < 1) throw std::invalid_argument("hls_bound: dimension must be >= 1");
    return std::pow(2.0, (n + 3) / 2.0) * std::pow(alpha, n + 1) * mass * eps_unif;
}

double string_limit_bound(double eps_net, double c, double mass, int n) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("string_limit_bound: c must lie in (0,1)");
    require_nonnegative(eps_net, "eps_net");
    return hls_bound(n, 1.0 / c, mass, 12.0 * eps_net);
}

PipeBoundReport pipe_bound(double rho, double A_T1, double A_T2, double A_T3) {
    require_nonnegative(rho, "rho");
    require_nonnegative(A_T1, "A_T1");
    require_nonnegative(A_T2, "A_T2");
    require_nonnegative(A_T3, "A_T3");
    PipeBoundReport rep;
    rep.term_sqrt = A_T1 * std::sqrt(rho);
    rep.term_linear = A_T2 * rho;
    rep.term_quadratic = A_T3 * rho * rho;
    rep.value = rep.term_sqrt + rep.term_linear + rep.term_quadratic;
    rep.dominant = PipeDominantTerm::SqrtRho;
    if (rep.term_linear > rep.term_sqrt && rep.term_linear >= rep.term_quadratic)
        rep.dominant = PipeDominantTerm::Linear;
    else if (rep.term_quadratic > rep.term_sqrt && rep.term_quadratic > rep.term_linear)
        rep.dominant = PipeDominantTerm::Quadratic;
    return rep;
}

TunnelsToStringsReport tunnels_to_strings_bound(double eps, std::size_t K,
                                                double per_surgery_bound) {
    if (!(eps > 0.0)) throw std::invalid_argument("tunnels_to_strings_bound: eps must be positive");
    require_nonnegative(per_surgery_bound, "per_surgery_bound");
    // K must be N(N-1)/2 for some integer N
    std::size_t N = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(K))) / 2.0);
    bool triangular = false;
    for (std::size_t cand = (N > 1 ? N - 1 : 1); cand <= N + 1; ++cand) {
        if (cand * (cand - 1) / 2 == K) {
            N = cand;
            triangular = true;
            break;
        }
    }
    if (!triangular)
        throw std::invalid_argument("tunnels_to_strings_bound: K is not N(N-1)/2 for any N");
    TunnelsToStringsReport rep;
    rep.K = K;
    rep.N = N;
    rep.raw_sum = static_cast<double>(K) * per_surgery_bound;
    rep.normalized_constant = rep.raw_sum / std::sqrt(eps);
    return rep;
}

} // namespace flatlab
