#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatlab/epsilon_net.hpp"
#include "flatlab/metric_space.hpp"
#include "flatlab/sampled_manifold.hpp"
#include "flatlab/scalar_ledger.hpp"
#include "flatlab/tunnel.hpp"

namespace flatlab {

struct Attachment {
    enum class Kind { String, Tunnel };
    Kind kind = Kind::String;
    int i = -1, j = -1;       // net center pair, or -1 for ad-hoc attachments
    std::string a_id, b_id;   // endpoints in the glued graph
    double ell = 0.0;         // target length
    double delta = 0.0;       // tunnel neck radius (tunnels only)
    double L = 0.0;           // realized length/diameter
    double vol = 0.0;         // model volume (tunnels only)
};

/**
 * A sampled manifold after surgery: strings and/or tunnels attached, with
 * removed-ball vertices dropped. Every distance question is answered by
 * shortest paths on the glued graph.
 */
struct GluedSpace {
    SampledManifold graph;
    std::size_t n_base = 0; // vertices [0, n_base) of the pre-surgery carrier that survive
    std::vector<Attachment> attachments;
    ScalarCurvatureLedger ledger;

    std::string attachments_csv() const;
};

using PairDistanceOracle = std::function<double(std::uint32_t, std::uint32_t)>;

struct StringOptions {
    double kappa_base = 0.0;
    int chain_segments = 1; // >1 samples each string as a vertex chain
    // optional d_g upper estimate; when set, ell >= d_g raises HypothesisError
    PairDistanceOracle d_g_check;
};

/// Attaches one string per unordered center pair (i < j) between ports
/// q_j^i and q_i^j, of length d_target(q_j^i, q_i^j).
GluedSpace attach_strings(const PortedSphere& ported, const PairDistanceOracle& d_target,
                          const StringOptions& opts = {});

/// Convenience overload taking the target distances as a finite metric
/// space over (at least) the port ids; checks d_target < d_g on all pairs.
GluedSpace attach_strings(const PortedSphere& ported, const FiniteMetricSpace& d_target,
                          const StringOptions& opts = {});

struct TunnelRadii {
    std::map<std::pair<int, int>, double> rho; // per unordered pair (i < j)
    double max_rho = 0.0;
    double min_port_gap = 0.0; // over distinct ports anywhere
};

/// rho_{i,j} = min(eps / N^4, rho0(i, j)), verified to keep the port balls
/// pairwise disjoint. rho0 defaults to +infinity when not supplied.
TunnelRadii choose_tunnel_radii(const PortedSphere& ported,
                                const std::function<double(int, int)>& rho0_map = {},
                                int workers = 8);

struct TunnelAttachOptions {
    int dim = 3;
    double kappa = 0.0;
    int j_schedule = 0; // 0 -> ceil(1 / eps)
    double A_model = 4.0;
    int chain_segments = 1;
};

/// Removes the port balls and splices one tunnel per pair, realized at the
/// graph scale as an axial chain of the model length; the scalar ledger
/// records kappa - 1/m(eps) per tunnel.
GluedSpace attach_tunnels(const PortedSphere& ported, const TunnelRadii& radii,
                          const PairDistanceOracle& d_target, const TunnelAttachOptions& opts);

/// Sup of |d_1 - d_2| over source x target vertex pairs, with the two
/// restricted diameters collected in the same pass.
struct SupDiffReport {
    double sup = 0.0;
    double diam1 = 0.0, diam2 = 0.0;
    double ratio_max = 1.0; // max over pairs of max(d1/d2, d2/d1)
    std::pair<std::string, std::string> argmax;
};
SupDiffReport sup_distance_difference(const SampledManifold& g1, const SampledManifold& g2,
                                      const std::vector<std::string>& sources,
                                      const std::vector<std::string>& targets, int workers = 8);

/// lambda = sup over W-vertex pairs of |d_{M_rho} - d_{M~_rho}|; both
/// spaces must carry every W vertex.
double claim_t1_lambda(const GluedSpace& m_rho, const GluedSpace& m_rho_tilde,
                       const std::vector<std::string>& w_ids, int workers = 8);

struct PipeParams {
    double h = 0.05;
    double amplitude = 0.1;   // conformal factor exp(2 * amplitude * x3)
    double rho = 0.2;
    double ell_fraction = 0.5;   // ell = fraction * d_g(p, q)
    double delta_fraction = 0.25; // delta = fraction * rho
    int n_bound = 3; // dimension used by the bound calculators
    double kappa = 0.0;
    int j_schedule = 0; // 0 -> ceil(1 / rho)
    int workers = 8;
};

/**
 * The four single-pair surgery spaces around the poles of the conformal
 * axis: tunnel space, mollified tunnel space, string space, mollified
 * string space. The poles give exact arc-length polar charts, so the
 * mollified metric is the polar-form blend with no chart error.
 */
struct PipeSpaces {
    GluedSpace m_rho;        // tunnel, unmollified
    GluedSpace m_rho_tilde;  // tunnel, mollified caps
    GluedSpace m_zero;       // string, unmollified
    GluedSpace m_zero_tilde; // string, mollified caps
    std::vector<std::string> w_ids;   // shared vertices outside both rho-balls
    std::vector<std::string> base_ids; // shared carrier vertices (all four spaces)
    double d_g_pq = 0.0, d_gtilde_pq = 0.0;
    double ell = 0.0, delta = 0.0, rho = 0.0;
    TunnelModel tunnel;
    double vol_M_g = 0.0, vol_M_gtilde = 0.0;
    double vol_W_g = 0.0, vol_W_gtilde = 0.0;
    double bdry_W_g = 0.0, bdry_W_gtilde = 0.0;
    double inj_proxy = 0.0;
};

PipeSpaces build_pipe_spaces(const PipeParams& params);

/// Bisection bound rho_0 for the gate ell < d_{g~_rho}(p, q): largest
/// swept mollification radius that keeps the strict inequality.
double find_rho_zero(const PipeParams& params, double ell, double rho_lo, double rho_hi,
                     int iterations = 8);

} // namespace flatlab
