#include "flatlab/epsilon_net.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>

#include "flatlab/errors.hpp"

namespace flatlab {

namespace {

std::size_t spread_seed_vertex(const SampledManifold& base, int workers) {
    const auto& pos = base.positions();
    const std::size_t n = base.size();
    std::vector<double> avg(n, 0.0);
    parallel_for(n, workers, [&](std::size_t i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += unit_angle(pos[i], pos[j]);
        avg[i] = sum;
    });
    return static_cast<std::size_t>(std::max_element(avg.begin(), avg.end()) - avg.begin());
}

} // namespace

EpsilonNet build_epsilon_net(const SampledManifold& base, double eps, int workers) {
    if (!(eps > 0.0)) throw std::invalid_argument("build_epsilon_net: eps must be positive");
    if (eps < base.resolution)
        throw ResolutionError("build_epsilon_net: eps below the graph resolution");

    EpsilonNet net;
    net.eps = eps;

    std::vector<double> min_dist(base.size(), kInfDist);
    std::size_t seed = spread_seed_vertex(base, workers);
    net.min_separation = kInfDist;

    std::size_t next = seed;
    for (;;) {
        net.centers.push_back(static_cast<std::uint32_t>(next));
        net.center_ids.push_back(base.ids()[next]);
        auto dist = geodesic_distance(base, next);
        if (net.centers.size() > 1) {
            net.min_separation = std::min(net.min_separation, min_dist[next]);
        }
        double farthest = 0.0;
        std::size_t far_idx = 0;
        for (std::size_t v = 0; v < base.size(); ++v) {
            min_dist[v] = std::min(min_dist[v], dist[v]);
            if (min_dist[v] > farthest) {
                farthest = min_dist[v];
                far_idx = v;
            }
        }
        net.covering_radius = farthest;
        if (farthest <= eps) break;
        next = far_idx;
    }
    if (net.centers.size() == 1) net.min_separation = kInfDist;
    return net;
}

PortedSphere place_ports(const SampledManifold& base, const EpsilonNet& net, int workers) {
    const std::size_t N = net.N();
    const double eps = net.eps;
    PortedSphere out;
    out.net = net;
    out.manifold = base; // copy, then augment
    out.n_base = base.size();
    out.ports.eps = eps;
    out.ports.spacing_floor = eps / static_cast<double>(N);

    if (N < 2) return out; // nothing to attach between fewer than two centers

    const auto& pos = base.positions();
    const double golden = M_PI * (3.0 - std::sqrt(5.0));

    struct PendingPort {
        int i, j;
        V3 x;
        std::string id;
    };
    std::vector<PendingPort> pending;
    pending.reserve(N * (N - 1));

    double min_same_circle = kInfDist;
    for (std::size_t i = 0; i < N; ++i) {
        const V3 c = pos[net.centers[i]];
        V3 ref = std::fabs(c.z) < 0.9 ? V3{0, 0, 1} : V3{1, 0, 0};
        V3 u = normalized(cross(c, ref));
        V3 v = cross(c, u);
        double offset = golden * static_cast<double>(i);
        std::size_t slot = 0;
        std::vector<V3> circle_pts;
        for (std::size_t j = 0; j < N; ++j) {
            if (j == i) continue;
            double theta = offset + 2.0 * M_PI * static_cast<double>(slot) / static_cast<double>(N - 1);
            ++slot;
            V3 x = c * std::cos(eps) + (u * std::cos(theta) + v * std::sin(theta)) * std::sin(eps);
            char buf[48];
            std::snprintf(buf, sizeof(buf), "port/%04zu/%04zu", i, j);
            pending.push_back({static_cast<int>(i), static_cast<int>(j), x, buf});
            circle_pts.push_back(x);
        }
        for (std::size_t a = 0; a + 1 < circle_pts.size(); ++a)
            min_same_circle = std::min(min_same_circle, unit_angle(circle_pts[a], circle_pts[a + 1]));
        if (!circle_pts.empty())
            min_same_circle = std::min(min_same_circle, unit_angle(circle_pts.back(), circle_pts.front()));
        // uniformly spaced points on the circle: adjacent pairs realize the minimum
    }
    if (min_same_circle <= out.ports.spacing_floor)
        throw ResolutionError("place_ports: same-circle port spacing fell below eps/N");
    out.ports.min_same_circle_spacing = min_same_circle;

    // coincidence with net centers is forbidden
    std::atomic<bool> collision{false};
    parallel_for(pending.size(), workers, [&](std::size_t k) {
        for (std::size_t i = 0; i < N; ++i)
            if (unit_angle(pending[k].x, pos[net.centers[i]]) < 1e-9) collision = true;
    });
    if (collision) throw ConstructionError("place_ports: a port coincides with a net center");

    // stitch each port to the base vertices near its circle point
    RoundField round(1.0);
    std::vector<std::vector<std::pair<std::uint32_t, double>>> stitch_lists(pending.size());
    std::atomic<bool> unanchored{false};
    parallel_for(pending.size(), workers, [&](std::size_t k) {
        const V3& x = pending[k].x;
        double radius = 1.35 * base.resolution;
        std::vector<std::pair<std::uint32_t, double>> found;
        for (int attempt = 0; attempt < 3 && found.empty(); ++attempt, radius *= 1.5) {
            double cos_thresh = std::cos(radius);
            for (std::size_t b = 0; b < base.size(); ++b) {
                if (dot(x, pos[b]) >= cos_thresh) {
                    double len = round.arc_length(x, pos[b]);
                    if (len > 0.0) found.emplace_back(static_cast<std::uint32_t>(b), len);
                }
            }
        }
        if (found.empty()) {
            unanchored = true;
            return;
        }
        std::sort(found.begin(), found.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
        if (found.size() > 6) found.resize(6);
        stitch_lists[k] = std::move(found);
    });
    if (unanchored)
        throw ResolutionError("place_ports: geodesic sphere too sparsely sampled to anchor a port");

    for (std::size_t k = 0; k < pending.size(); ++k) {
        std::size_t idx = out.manifold.add_vertex(pending[k].id, pending[k].x);
        out.ports.port_index[{pending[k].i, pending[k].j}] = static_cast<std::uint32_t>(idx);
        for (const auto& [b, len] : stitch_lists[k]) out.manifold.add_edge(idx, b, len);
        out.ports.stitches[static_cast<std::uint32_t>(idx)] = stitch_lists[k];
    }
    out.manifold.finalize();
    return out;
}

} // namespace flatlab
