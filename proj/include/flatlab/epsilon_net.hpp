#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "flatlab/sampled_manifold.hpp"

namespace flatlab {

/**
 * An eps-net of a sampled manifold: centers are graph vertices chosen by
 * farthest-point sampling (seeded at the vertex of maximal average chord
 * distance), so the set is eps-covering and eps-separated simultaneously.
 */
struct EpsilonNet {
    double eps = 0.0;
    std::vector<std::uint32_t> centers;     // indices into the base manifold
    std::vector<std::string> center_ids;
    double covering_radius = 0.0;           // realized max distance to the net
    double min_separation = 0.0;            // realized min center pair distance

    std::size_t N() const { return centers.size(); }
};

EpsilonNet build_epsilon_net(const SampledManifold& base, double eps, int workers = 8);

/**
 * Port layout: for every net center i, N-1 uniformly spaced points on the
 * geodesic circle of radius eps around it, one per other center j. Ports
 * are inserted as exact circle points and stitched to nearby base vertices
 * with quadrature-length edges, so the augmented graph carries them.
 */
struct PortSet {
    double eps = 0.0;
    double spacing_floor = 0.0; // eps / N
    double min_same_circle_spacing = 0.0;
    // (i, j) -> vertex index of q_j^i in the augmented manifold, i != j
    std::map<std::pair<int, int>, std::uint32_t> port_index;
    // per-port stitch anchors: (base vertex index, edge length)
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, double>>> stitches;
};

struct PortedSphere {
    SampledManifold manifold; // base + port vertices + stitch edges
    EpsilonNet net;
    PortSet ports;
    std::size_t n_base = 0; // vertices [0, n_base) are the base manifold
};

/// Round-sphere port placement. Throws ResolutionError when a port cannot
/// be anchored to the base graph, ConstructionError if a port collides
/// with a net center.
PortedSphere place_ports(const SampledManifold& base, const EpsilonNet& net, int workers = 8);

} // namespace flatlab
