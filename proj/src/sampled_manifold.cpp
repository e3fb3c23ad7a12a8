#include "flatlab/sampled_manifold.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <queue>
#include <sstream>

#include "flatlab/errors.hpp"

namespace flatlab {

std::size_t SampledManifold::add_vertex(const std::string& id, const V3& pos) {
    if (!index_.emplace(id, ids_.size()).second)
        throw std::invalid_argument("duplicate vertex id: " + id);
    ids_.push_back(id);
    pos_.push_back(pos);
    return ids_.size() - 1;
}

void SampledManifold::add_edge(std::size_t a, std::size_t b, double len) {
    if (a == b) throw std::invalid_argument("self edge");
    if (a >= ids_.size() || b >= ids_.size()) throw std::invalid_argument("edge endpoint out of range");
    if (!(len > 0.0)) throw std::invalid_argument("edge length must be strictly positive");
    if (a > b) std::swap(a, b);
    edges_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), len});
}

void SampledManifold::finalize() {
    std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
        return x.a != y.a ? x.a < y.a : (x.b != y.b ? x.b < y.b : x.len < y.len);
    });
    // keep the shortest copy of duplicated pairs
    std::vector<Edge> unique_edges;
    unique_edges.reserve(edges_.size());
    for (const Edge& e : edges_) {
        if (!unique_edges.empty() && unique_edges.back().a == e.a && unique_edges.back().b == e.b)
            continue;
        unique_edges.push_back(e);
    }
    edges_ = std::move(unique_edges);

    offsets_.assign(size() + 1, 0);
    for (const Edge& e : edges_) {
        ++offsets_[e.a + 1];
        ++offsets_[e.b + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    nbr_.assign(edges_.size() * 2, 0);
    wgt_.assign(edges_.size() * 2, 0.0);
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges_) {
        nbr_[cursor[e.a]] = e.b;
        wgt_[cursor[e.a]++] = e.len;
        nbr_[cursor[e.b]] = e.a;
        wgt_[cursor[e.b]++] = e.len;
    }
}

std::size_t SampledManifold::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown vertex id: " + id);
    return it->second;
}

bool SampledManifold::connected() const {
    if (size() == 0) return true;
    std::vector<char> seen(size(), 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t e = offsets_[v]; e < offsets_[v + 1]; ++e) {
            std::uint32_t w = nbr_[e];
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == size();
}

std::string SampledManifold::vertices_csv() const {
    std::ostringstream out;
    out << "id,x,y,z\n";
    for (std::size_t i = 0; i < size(); ++i) {
        out << ids_[i] << ',' << format_double(pos_[i].x) << ',' << format_double(pos_[i].y) << ','
            << format_double(pos_[i].z) << '\n';
    }
    return out.str();
}

std::string SampledManifold::edges_csv() const {
    std::ostringstream out;
    out << "i,j,length\n";
    for (const Edge& e : edges_)
        out << e.a << ',' << e.b << ',' << format_double(e.len) << '\n';
    return out.str();
}

SampledManifold SampledManifold::from_csv(const std::string& vertices_csv,
                                          const std::string& edges_csv) {
    SampledManifold m;
    std::istringstream vin(vertices_csv);
    std::string line;
    std::getline(vin, line); // header
    while (std::getline(vin, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 4) throw std::invalid_argument("vertices csv: bad row");
        m.add_vertex(f[0], {std::stod(f[1]), std::stod(f[2]), std::stod(f[3])});
    }
    std::istringstream ein(edges_csv);
    std::getline(ein, line);
    while (std::getline(ein, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 3) throw std::invalid_argument("edges csv: bad row");
        m.add_edge(std::stoul(f[0]), std::stoul(f[1]), std::stod(f[2]));
    }
    m.finalize();
    return m;
}

std::vector<double> geodesic_distance(const SampledManifold& m, std::size_t source,
                                      bool require_connected) {
    if (!m.finalized()) throw std::logic_error("manifold not finalized");
    const auto& off = m.csr_offsets();
    const auto& nbr = m.csr_neighbors();
    const auto& wgt = m.csr_weights();
    std::vector<double> dist(m.size(), kInfDist);
    dist[source] = 0.0;
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0.0, static_cast<std::uint32_t>(source)});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (std::uint32_t e = off[v]; e < off[v + 1]; ++e) {
            double nd = d + wgt[e];
            if (nd < dist[nbr[e]]) {
                dist[nbr[e]] = nd;
                heap.push({nd, nbr[e]});
            }
        }
    }
    if (require_connected) {
        for (double d : dist)
            if (d == kInfDist)
                throw ConstructionError("geodesic_distance: graph is not connected from source");
    }
    return dist;
}

std::vector<double> geodesic_distance(const SampledManifold& m, const std::string& source_id,
                                      bool require_connected) {
    return geodesic_distance(m, m.index_of(source_id), require_connected);
}

double min_distance_between(const SampledManifold& m, const std::string& p, const std::string& q) {
    std::size_t pi = m.index_of(p), qi = m.index_of(q);
    if (pi == qi) return 0.0;
    return geodesic_distance(m, pi)[qi];
}

double injectivity_radius_proxy(const SampledManifold& m, const std::string& center_id) {
    auto dist = geodesic_distance(m, center_id);
    double dmax = *std::max_element(dist.begin(), dist.end());
    double band = 2.0 * std::max(m.resolution, dmax / 64.0);
    const auto& off = m.csr_offsets();
    const auto& nbr = m.csr_neighbors();

    auto shell_connected = [&](double r) {
        std::vector<std::uint32_t> shell;
        for (std::uint32_t v = 0; v < m.size(); ++v)
            if (dist[v] > r && dist[v] <= r + band) shell.push_back(v);
        if (shell.empty()) return false;
        std::vector<char> in_shell(m.size(), 0), seen(m.size(), 0);
        for (auto v : shell) in_shell[v] = 1;
        std::vector<std::uint32_t> stack{shell[0]};
        seen[shell[0]] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (std::uint32_t e = off[v]; e < off[v + 1]; ++e) {
                auto w = nbr[e];
                if (in_shell[w] && !seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == shell.size();
    };

    double best = 0.0;
    const int steps = 48;
    for (int i = 1; i <= steps; ++i) {
        double r = dmax * i / (steps + 1);
        bool complement_nonempty = std::any_of(dist.begin(), dist.end(),
                                               [&](double d) { return d > r + band; });
        if (complement_nonempty && shell_connected(r)) best = r;
    }
    return best;
}

std::vector<V3> fibonacci_sphere(std::size_t n) {
    std::vector<V3> pts(n);
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / n;
        double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = golden * static_cast<double>(i);
        pts[i] = {rad * std::cos(phi), rad * std::sin(phi), z};
    }
    return pts;
}

namespace {

V3 frame_u(const V3& pole) {
    V3 ref = std::fabs(pole.z) < 0.9 ? V3{0, 0, 1} : V3{1, 0, 0};
    return normalized(cross(pole, ref));
}

} // namespace

SphereGraph build_sphere_graph(double h, const SphereMetricField& field,
                               const std::vector<CapGridSpec>& caps,
                               const SphereGraphOptions& opts) {
    if (!(h > 0.0)) throw std::invalid_argument("build_sphere_graph: h must be positive");
    SphereGraph out;
    SampledManifold& m = out.manifold;
    m.dim = 2;
    m.resolution = h;
    m.generator = "sphere";

    struct CapGeom {
        CapGridSpec spec;
        double r_extent; // round radius covered by the grid
    };
    std::vector<CapGeom> geoms;
    for (const auto& c : caps) {
        double r_extent = c.r_of_s ? c.r_of_s(c.extent_s) : c.extent_s;
        geoms.push_back({c, r_extent});
    }

    // lattice, skipping points covered by cap grids
    std::size_t n_lattice = static_cast<std::size_t>(std::ceil(4.0 * M_PI / (h * h)));
    std::vector<double> connect_radius;
    const double base_r = opts.base_radius_factor * std::pow(h, opts.base_radius_exponent);
    {
        auto pts = fibonacci_sphere(n_lattice);
        std::size_t idx = 0;
        char buf[32];
        for (const auto& p : pts) {
            bool covered = false;
            for (const auto& g : geoms)
                if (unit_angle(p, g.spec.pole) < g.r_extent) covered = true;
            if (covered) continue;
            std::snprintf(buf, sizeof(buf), "base/%06zu", idx++);
            m.add_vertex(buf, p);
            connect_radius.push_back(base_r);
        }
    }

    // cap grids
    for (const auto& g : geoms) {
        const auto& c = g.spec;
        CapGridInfo info;
        info.prefix = c.prefix;
        info.pole = c.pole;
        info.ring_step = c.ring_step;
        V3 u = frame_u(c.pole), v = cross(c.pole, u);
        double cap_r = opts.cap_radius_factor * c.ring_step;
        if (c.include_center) {
            info.center_index = static_cast<std::uint32_t>(m.add_vertex(c.prefix + "/center", c.pole));
            connect_radius.push_back(cap_r);
        }
        int n_rings = static_cast<int>(std::llround(c.extent_s / c.ring_step));
        for (int k = 1; k <= n_rings; ++k) {
            double s = k * c.ring_step;
            double r = c.r_of_s ? c.r_of_s(s) : s;
            int mk = std::max<int>(8, static_cast<int>(std::ceil(2.0 * M_PI * std::sin(r) / c.ring_step)));
            std::vector<std::uint32_t> ring(mk);
            char buf[64];
            for (int j = 0; j < mk; ++j) {
                double theta = 2.0 * M_PI * j / mk;
                V3 x = c.pole * std::cos(r) + (u * std::cos(theta) + v * std::sin(theta)) * std::sin(r);
                std::snprintf(buf, sizeof(buf), "%s/r%03d/a%04d", c.prefix.c_str(), k, j);
                ring[j] = static_cast<std::uint32_t>(m.add_vertex(buf, x));
                connect_radius.push_back(cap_r);
            }
            info.ring_s.push_back(s);
            info.ring_r.push_back(r);
            info.ring_vertices.push_back(std::move(ring));
        }
        out.caps.push_back(std::move(info));
    }

    // radius-rule edge candidates; angles compared through dot products
    const std::size_t n = m.size();
    const auto& pos = m.positions();
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> found(
        std::max<std::size_t>(1, opts.workers));
    std::mutex found_mutex;
    parallel_for(n, opts.workers, [&](std::size_t i) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> local;
        for (std::size_t j = i + 1; j < n; ++j) {
            double thresh = 0.5 * (connect_radius[i] + connect_radius[j]);
            if (dot(pos[i], pos[j]) >= std::cos(thresh))
                local.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
        if (!local.empty()) {
            std::lock_guard<std::mutex> lock(found_mutex);
            found[0].insert(found[0].end(), local.begin(), local.end());
        }
    });
    auto& cand = found[0];
    std::sort(cand.begin(), cand.end());

    std::vector<double> lengths(cand.size());
    parallel_for(cand.size(), opts.workers, [&](std::size_t k) {
        lengths[k] = field.arc_length(pos[cand[k].first], pos[cand[k].second], opts.quad_points);
    });
    for (std::size_t k = 0; k < cand.size(); ++k)
        m.add_edge(cand[k].first, cand[k].second, lengths[k]);

    m.finalize();
    if (!m.connected())
        throw ResolutionError("build_sphere_graph: graph disconnected; h too coarse");
    return out;
}

SampledManifold build_round_sphere(double h, double tau) {
    RoundField field(tau);
    auto g = build_sphere_graph(h, field);
    g.manifold.generator = "round";
    return std::move(g.manifold);
}

SampledManifold build_conformal_sphere(double h, const std::function<double(const V3&)>& f) {
    ConformalField field(f);
    auto g = build_sphere_graph(h, field);
    g.manifold.generator = "conformal";
    return std::move(g.manifold);
}

SampledManifold build_cylinder(double h, double length, const std::function<double(double)>& warp) {
    if (!(h > 0.0) || !(length > 0.0)) throw std::invalid_argument("build_cylinder: bad parameters");
    auto w = warp ? warp : [](double) { return 1.0; };
    double wmax = 0.0;
    for (int i = 0; i <= 64; ++i) wmax = std::max(wmax, w(length * i / 64.0));

    int n_t = std::max<int>(2, static_cast<int>(std::ceil(length / h)) + 1);
    int n_th = std::max<int>(6, static_cast<int>(std::ceil(2.0 * M_PI * wmax / h)));
    SampledManifold m;
    m.dim = 2;
    m.resolution = h;
    m.generator = "cylinder";

    char buf[48];
    for (int i = 0; i < n_t; ++i) {
        double t = length * i / (n_t - 1);
        for (int j = 0; j < n_th; ++j) {
            double theta = 2.0 * M_PI * j / n_th;
            std::snprintf(buf, sizeof(buf), "cyl/%04d/%04d", i, j);
            m.add_vertex(buf, {w(t) * std::cos(theta), w(t) * std::sin(theta), t});
        }
    }
    double dth = 2.0 * M_PI / n_th;
    double dt = length / (n_t - 1);
    auto seg_len = [&](double t0, double t1, double dtheta) {
        return gauss_legendre(
            [&](double tau) {
                double t = t0 + (t1 - t0) * tau;
                double wt = w(t);
                return std::sqrt((t1 - t0) * (t1 - t0) + wt * wt * dtheta * dtheta);
            },
            0.0, 1.0, 8);
    };
    auto vid = [&](int i, int j) { return static_cast<std::size_t>(i) * n_th + ((j % n_th + n_th) % n_th); };
    for (int i = 0; i < n_t; ++i) {
        double t = length * i / (n_t - 1);
        for (int j = 0; j < n_th; ++j) {
            m.add_edge(vid(i, j), vid(i, j + 1), seg_len(t, t, dth));
            if (i + 1 < n_t) {
                double t1 = length * (i + 1) / (n_t - 1);
                m.add_edge(vid(i, j), vid(i + 1, j), seg_len(t, t1, 0.0));
                m.add_edge(vid(i, j), vid(i + 1, j + 1), seg_len(t, t1, dth));
                m.add_edge(vid(i, j), vid(i + 1, j - 1), seg_len(t, t1, -dth));
            }
        }
    }
    (void)dt;
    m.finalize();
    return m;
}

SampledManifold build_radial_disc(const RadialMetric& g, double h) {
    if (!(h > 0.0) || !(g.rho_max > 0.0)) throw std::invalid_argument("build_radial_disc: bad parameters");
    SampledManifold m;
    m.dim = g.dim;
    m.resolution = h;
    m.generator = "radial";

    int n_rings = std::max<int>(2, static_cast<int>(std::ceil(g.rho_max / h)));
    double ds = g.rho_max / n_rings;
    std::vector<std::vector<std::size_t>> rings(n_rings + 1);
    std::size_t center = m.add_vertex("disc/center", {0, 0, 0});
    char buf[48];
    for (int k = 1; k <= n_rings; ++k) {
        double s = k * ds;
        double circ = 2.0 * M_PI * std::sqrt(std::max(1e-300, g(s, 0.0)));
        int mk = std::max<int>(8, static_cast<int>(std::ceil(circ / ds)));
        rings[k].resize(mk);
        for (int j = 0; j < mk; ++j) {
            double theta = 2.0 * M_PI * j / mk;
            std::snprintf(buf, sizeof(buf), "disc/r%03d/a%04d", k, j);
            rings[k][j] = m.add_vertex(buf, {s * std::cos(theta), s * std::sin(theta), 0.0});
        }
    }

    auto seg_len = [&](double s0, double th0, double s1, double th1) {
        double dth = std::remainder(th1 - th0, 2.0 * M_PI);
        return gauss_legendre(
            [&](double tau) {
                double s = s0 + (s1 - s0) * tau;
                double th = th0 + dth * tau;
                double a = g(std::max(s, 1e-12), th);
                return std::sqrt((s1 - s0) * (s1 - s0) + a * dth * dth);
            },
            0.0, 1.0, 8);
    };
    auto theta_of = [&](int k, int j) {
        int mk = static_cast<int>(rings[k].size());
        return 2.0 * M_PI * ((j % mk + mk) % mk) / mk;
    };

    // spokes from the center to ring 1
    for (std::size_t j = 0; j < rings[1].size(); ++j)
        m.add_edge(center, rings[1][j], seg_len(0.0, theta_of(1, j), ds, theta_of(1, j)));
    for (int k = 1; k <= n_rings; ++k) {
        int mk = static_cast<int>(rings[k].size());
        for (int j = 0; j < mk; ++j) {
            m.add_edge(rings[k][j], rings[k][(j + 1) % mk],
                       seg_len(k * ds, theta_of(k, j), k * ds, theta_of(k, j + 1)));
            if (k + 1 <= n_rings) {
                // connect to the two angular-nearest vertices of the next ring
                int mk1 = static_cast<int>(rings[k + 1].size());
                double th = theta_of(k, j);
                int jn = static_cast<int>(std::llround(th / (2.0 * M_PI) * mk1));
                for (int djn = 0; djn <= 1; ++djn) {
                    int t = (jn + djn) % mk1;
                    m.add_edge(rings[k][j], rings[k + 1][t],
                               seg_len(k * ds, th, (k + 1) * ds, theta_of(k + 1, t)));
                }
            }
        }
    }
    m.finalize();
    return m;
}

} // namespace flatlab
