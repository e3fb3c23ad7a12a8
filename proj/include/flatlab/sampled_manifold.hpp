#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "flatlab/fields.hpp"
#include "flatlab/util.hpp"

namespace flatlab {

/**
 * A weighted-graph discretization of a Riemannian manifold: vertices with
 * chart/embedding coordinates and edges whose lengths are quadratures of
 * the metric along chart segments. Geodesic distances are exact shortest
 * paths on this graph.
 */
class SampledManifold {
public:
    struct Edge {
        std::uint32_t a = 0, b = 0;
        double len = 0.0;
    };

    std::size_t add_vertex(const std::string& id, const V3& pos);
    void add_edge(std::size_t a, std::size_t b, double len);

    /// Deduplicates edges, validates lengths, and builds adjacency.
    void finalize();

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::vector<V3>& positions() const { return pos_; }
    const V3& position(std::size_t i) const { return pos_[i]; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t index_of(const std::string& id) const;
    bool has_vertex(const std::string& id) const { return index_.count(id) != 0; }

    bool finalized() const { return !offsets_.empty(); }
    bool connected() const;

    // CSR adjacency (valid after finalize)
    const std::vector<std::uint32_t>& csr_offsets() const { return offsets_; }
    const std::vector<std::uint32_t>& csr_neighbors() const { return nbr_; }
    const std::vector<double>& csr_weights() const { return wgt_; }

    std::string vertices_csv() const;
    std::string edges_csv() const;
    static SampledManifold from_csv(const std::string& vertices_csv, const std::string& edges_csv);

    int dim = 2;
    double resolution = 0.0;
    std::string generator;

private:
    std::vector<std::string> ids_;
    std::vector<V3> pos_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::uint32_t> offsets_, nbr_;
    std::vector<double> wgt_;
};

inline constexpr double kInfDist = std::numeric_limits<double>::infinity();

/// Single-source shortest-path distances (binary-heap Dijkstra). With
/// require_connected, an unreachable vertex raises ConstructionError.
std::vector<double> geodesic_distance(const SampledManifold& m, std::size_t source,
                                      bool require_connected = true);
std::vector<double> geodesic_distance(const SampledManifold& m, const std::string& source_id,
                                      bool require_connected = true);

double min_distance_between(const SampledManifold& m, const std::string& p, const std::string& q);

/**
 * Largest radius r for which the graph ball around the center still looks
 * like a disk: the shell band (r, r + 2h] is non-empty and connected in the
 * induced subgraph and the complement of the ball is non-empty.
 */
double injectivity_radius_proxy(const SampledManifold& m, const std::string& center_id);

/// Quasi-uniform unit-sphere point set (spiral lattice), deterministic.
std::vector<V3> fibonacci_sphere(std::size_t n);

/// Polar refinement grid around a pole, used where surgeries need ring
/// structure at a finer scale than the global lattice.
struct CapGridSpec {
    std::string prefix;
    V3 pole{0, 0, 1};
    double extent_s = 0.0;  // grid reaches this arc radius
    double ring_step = 0.0; // arc spacing between rings
    bool include_center = true;
    std::function<double(double)> r_of_s; // round radius of arc radius; identity if empty
};

struct CapGridInfo {
    std::string prefix;
    V3 pole;
    double ring_step = 0.0;
    std::uint32_t center_index = UINT32_MAX;
    std::vector<double> ring_s;
    std::vector<double> ring_r;
    std::vector<std::vector<std::uint32_t>> ring_vertices; // ordered by angle 2 pi j / m
};

struct SphereGraphOptions {
    // lattice connect radius = factor * h^exponent: growing the radius-to-
    // spacing ratio as h shrinks keeps shortest-path stretch falling with h
    double base_radius_exponent = 2.0 / 3.0;
    double base_radius_factor = 1.42;
    double cap_radius_factor = 3.0; // cap connect radius = factor * ring_step
    int quad_points = 8;
    int workers = 8;
};

struct SphereGraph {
    SampledManifold manifold;
    std::vector<CapGridInfo> caps;
};

/// Lattice + optional cap grids over a metric field on the unit 2-sphere.
/// Throws ResolutionError if the resulting graph is disconnected.
SphereGraph build_sphere_graph(double h, const SphereMetricField& field,
                               const std::vector<CapGridSpec>& caps = {},
                               const SphereGraphOptions& opts = {});

/// Round sphere of radius tau sampled at spacing h.
SampledManifold build_round_sphere(double h, double tau = 1.0);

/// Conformal metric e^{2 f} g_rd sampled at spacing h.
SampledManifold build_conformal_sphere(double h, const std::function<double(const V3&)>& f);

/// Warped product S^1 x [0, L] with metric dt^2 + w(t)^2 dtheta^2.
SampledManifold build_cylinder(double h, double length,
                               const std::function<double(double)>& warp = {});

/// Polar-chart disc graph of a radial metric dr^2 + g_r.
SampledManifold build_radial_disc(const RadialMetric& g, double h);

} // namespace flatlab
