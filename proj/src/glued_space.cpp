#include "flatlab/glued_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flatlab/errors.hpp"
#include "flatlab/fields.hpp"

namespace flatlab {

namespace {

std::pair<SampledManifold, std::vector<std::uint32_t>> remove_vertices(
    const SampledManifold& m, const std::vector<char>& removed) {
    SampledManifold out;
    out.dim = m.dim;
    out.resolution = m.resolution;
    out.generator = m.generator;
    const std::uint32_t kGone = UINT32_MAX;
    std::vector<std::uint32_t> remap(m.size(), kGone);
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (removed[v]) continue;
        remap[v] = static_cast<std::uint32_t>(out.add_vertex(m.ids()[v], m.position(v)));
    }
    for (const auto& e : m.edges()) {
        if (remap[e.a] == kGone || remap[e.b] == kGone) continue;
        out.add_edge(remap[e.a], remap[e.b], e.len);
    }
    return {std::move(out), std::move(remap)};
}

/// Chain of `segments` equal edges between two existing vertices.
void add_chain(SampledManifold& m, std::size_t a, std::size_t b, double total_len,
               const std::string& prefix, int segments) {
    segments = std::max(1, segments);
    if (segments == 1) {
        m.add_edge(a, b, total_len);
        return;
    }
    V3 pa = m.position(a), pb = m.position(b);
    std::size_t prev = a;
    char buf[96];
    for (int k = 1; k < segments; ++k) {
        double t = static_cast<double>(k) / segments;
        std::snprintf(buf, sizeof(buf), "%s/%04d", prefix.c_str(), k);
        std::size_t v = m.add_vertex(buf, pa * (1.0 - t) + pb * t);
        m.add_edge(prev, v, total_len / segments);
        prev = v;
    }
    m.add_edge(prev, b, total_len / segments);
}

} // namespace

std::string GluedSpace::attachments_csv() const {
    std::ostringstream out;
    out << "kind,i,j,ell,delta,L\n";
    for (const auto& a : attachments) {
        out << (a.kind == Attachment::Kind::String ? "string" : "tunnel") << ',' << a.i << ','
            << a.j << ',' << format_double(a.ell) << ',' << format_double(a.delta) << ','
            << format_double(a.L) << '\n';
    }
    return out.str();
}

GluedSpace attach_strings(const PortedSphere& ported, const PairDistanceOracle& d_target,
                          const StringOptions& opts) {
    GluedSpace out;
    out.graph = ported.manifold;
    out.n_base = ported.manifold.size();
    out.ledger.add("base", opts.kappa_base);

    for (const auto& [key, a_idx] : ported.ports.port_index) {
        auto [i, j] = key;
        if (i >= j) continue;
        auto it = ported.ports.port_index.find({j, i});
        if (it == ported.ports.port_index.end())
            throw ConstructionError("attach_strings: missing counterpart port");
        std::uint32_t b_idx = it->second;
        double ell = d_target(a_idx, b_idx);
        if (!(ell > 0.0)) throw HypothesisError("attach_strings: nonpositive target distance");
        if (opts.d_g_check) {
            double dg = opts.d_g_check(a_idx, b_idx);
            if (!(ell < dg))
                throw HypothesisError("attach_strings: d_target >= d_g for a port pair");
        }
        char prefix[48];
        std::snprintf(prefix, sizeof(prefix), "string/%04d-%04d", i, j);
        add_chain(out.graph, a_idx, b_idx, ell, prefix, opts.chain_segments);
        Attachment att;
        att.kind = Attachment::Kind::String;
        att.i = i;
        att.j = j;
        att.a_id = out.graph.ids()[a_idx];
        att.b_id = out.graph.ids()[b_idx];
        att.ell = ell;
        att.L = ell;
        out.attachments.push_back(att);
    }
    out.graph.finalize();
    if (!out.graph.connected()) throw ConstructionError("attach_strings: glued graph disconnected");
    return out;
}

GluedSpace attach_strings(const PortedSphere& ported, const FiniteMetricSpace& d_target,
                          const StringOptions& opts) {
    // Full hypothesis check d_target < d_g over the pairs the space names.
    const auto& m = ported.manifold;
    std::vector<std::size_t> graph_idx;
    for (const auto& id : d_target.points()) graph_idx.push_back(m.index_of(id));
    for (std::size_t i = 0; i < graph_idx.size(); ++i) {
        auto dist = geodesic_distance(m, graph_idx[i]);
        for (std::size_t j = 0; j < graph_idx.size(); ++j) {
            if (i == j) continue;
            if (!(d_target.at(i, j) < dist[graph_idx[j]]))
                throw HypothesisError("attach_strings: d_target >= d_g at pair " +
                                      d_target.points()[i] + "," + d_target.points()[j]);
        }
    }
    auto oracle = [&](std::uint32_t a, std::uint32_t b) {
        return d_target.at(d_target.index_of(m.ids()[a]), d_target.index_of(m.ids()[b]));
    };
    StringOptions inner = opts;
    inner.d_g_check = {}; // already verified above
    return attach_strings(ported, oracle, inner);
}

TunnelRadii choose_tunnel_radii(const PortedSphere& ported,
                                const std::function<double(int, int)>& rho0_map, int workers) {
    const std::size_t N = ported.net.N();
    if (N < 2) return {};
    const double eps = ported.net.eps;
    const double cap = eps / (static_cast<double>(N) * N * N * N);

    // minimum gap between any two distinct ports: same-circle spacing is
    // known; cross-circle pairs only matter for circles that can intersect
    const auto& pos = ported.manifold.positions();
    std::vector<std::pair<int, int>> close_pairs;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = i + 1; k < N; ++k)
            if (unit_angle(pos[ported.net.centers[i]], pos[ported.net.centers[k]]) <
                2.0 * eps + 4.0 * ported.manifold.resolution)
                close_pairs.emplace_back(static_cast<int>(i), static_cast<int>(k));

    std::vector<std::vector<std::uint32_t>> circle(N);
    for (const auto& [key, idx] : ported.ports.port_index) circle[key.first].push_back(idx);

    std::vector<double> pair_min(close_pairs.size(), kInfDist);
    parallel_for(close_pairs.size(), workers, [&](std::size_t k) {
        auto [i, kk] = close_pairs[k];
        double max_dot = -1.0;
        for (auto a : circle[i])
            for (auto b : circle[kk]) max_dot = std::max(max_dot, dot(pos[a], pos[b]));
        pair_min[k] = std::acos(std::clamp(max_dot, -1.0, 1.0));
    });
    double min_gap = ported.ports.min_same_circle_spacing;
    for (double v : pair_min) min_gap = std::min(min_gap, v);
    if (!(min_gap > 0.0))
        throw ResolutionError("choose_tunnel_radii: coincident ports, disjoint balls impossible");

    TunnelRadii out;
    out.min_port_gap = min_gap;
    for (const auto& [key, idx] : ported.ports.port_index) {
        auto [i, j] = key;
        if (i >= j) continue;
        double rho0 = rho0_map ? rho0_map(i, j) : kInfDist;
        double rho = std::min({cap, rho0, 0.499 * min_gap});
        if (!(rho > 0.0)) throw ResolutionError("choose_tunnel_radii: no admissible radius");
        out.rho[{i, j}] = rho;
        out.max_rho = std::max(out.max_rho, rho);
    }
    return out;
}

GluedSpace attach_tunnels(const PortedSphere& ported, const TunnelRadii& radii,
                          const PairDistanceOracle& d_target, const TunnelAttachOptions& opts) {
    GluedSpace out;
    const auto& m = ported.manifold;
    int j_sched = opts.j_schedule > 0
                      ? opts.j_schedule
                      : std::max(1, static_cast<int>(std::ceil(1.0 / ported.net.eps)));

    // drop base vertices strictly inside any port ball (the port itself is
    // the collapsed boundary sphere and stays as the attachment anchor);
    // radii far below the sampling scale cannot capture any vertex
    std::vector<char> removed(m.size(), 0);
    for (const auto& [key, rho] : radii.rho) {
        if (rho < 1e-3 * m.resolution) continue;
        for (auto port_key : {key, std::make_pair(key.second, key.first)}) {
            std::uint32_t q = ported.ports.port_index.at(port_key);
            for (std::size_t v = 0; v < ported.n_base; ++v)
                if (unit_angle(m.position(v), m.position(q)) < rho) removed[v] = 1;
        }
    }
    auto [graph, remap] = remove_vertices(m, removed);
    out.n_base = graph.size();
    out.ledger.add("base", opts.kappa);

    for (const auto& [key, rho] : radii.rho) {
        auto [i, j] = key;
        std::uint32_t a_old = ported.ports.port_index.at({i, j});
        std::uint32_t b_old = ported.ports.port_index.at({j, i});
        std::uint32_t a = remap[a_old], b = remap[b_old];
        if (a == UINT32_MAX || b == UINT32_MAX)
            throw ConstructionError("attach_tunnels: a port was removed by a ball");
        double ell = d_target(a_old, b_old);
        double delta = 0.5 * rho;
        TunnelModel model = tunnel_make(delta, ell, opts.dim, opts.kappa, j_sched, opts.A_model);
        char prefix[48];
        std::snprintf(prefix, sizeof(prefix), "tunnel/%04d-%04d", i, j);
        add_chain(graph, a, b, model.L, prefix, opts.chain_segments);
        char region[64];
        std::snprintf(region, sizeof(region), "%s floor", prefix);
        out.ledger.add(region, model.scalar_floor);
        Attachment att;
        att.kind = Attachment::Kind::Tunnel;
        att.i = i;
        att.j = j;
        att.a_id = graph.ids()[a];
        att.b_id = graph.ids()[b];
        att.ell = ell;
        att.delta = delta;
        att.L = model.L;
        att.vol = model.vol;
        out.attachments.push_back(att);
    }
    graph.finalize();
    if (!graph.connected()) throw ConstructionError("attach_tunnels: surgery disconnected the space");
    out.graph = std::move(graph);
    return out;
}

SupDiffReport sup_distance_difference(const SampledManifold& g1, const SampledManifold& g2,
                                      const std::vector<std::string>& sources,
                                      const std::vector<std::string>& targets, int workers) {
    if (sources.empty() || targets.empty())
        throw std::invalid_argument("sup_distance_difference: empty vertex sets");
    std::vector<std::size_t> s1(sources.size()), s2(sources.size());
    std::vector<std::size_t> t1(targets.size()), t2(targets.size());
    for (std::size_t k = 0; k < sources.size(); ++k) {
        s1[k] = g1.index_of(sources[k]);
        s2[k] = g2.index_of(sources[k]);
    }
    for (std::size_t k = 0; k < targets.size(); ++k) {
        t1[k] = g1.index_of(targets[k]);
        t2[k] = g2.index_of(targets[k]);
    }
    struct Row {
        double sup = 0.0, diam1 = 0.0, diam2 = 0.0, ratio = 1.0;
        std::size_t arg_t = 0;
    };
    std::vector<Row> rows(sources.size());
    parallel_for(sources.size(), workers, [&](std::size_t k) {
        auto d1 = geodesic_distance(g1, s1[k]);
        auto d2 = geodesic_distance(g2, s2[k]);
        Row row;
        for (std::size_t t = 0; t < targets.size(); ++t) {
            double a = d1[t1[t]], b = d2[t2[t]];
            row.diam1 = std::max(row.diam1, a);
            row.diam2 = std::max(row.diam2, b);
            if (a > 0.0 && b > 0.0) row.ratio = std::max(row.ratio, std::max(a / b, b / a));
            double diff = std::fabs(a - b);
            if (diff > row.sup) {
                row.sup = diff;
                row.arg_t = t;
            }
        }
        rows[k] = row;
    });
    SupDiffReport rep;
    for (std::size_t k = 0; k < sources.size(); ++k) {
        rep.diam1 = std::max(rep.diam1, rows[k].diam1);
        rep.diam2 = std::max(rep.diam2, rows[k].diam2);
        rep.ratio_max = std::max(rep.ratio_max, rows[k].ratio);
        if (rows[k].sup > rep.sup) {
            rep.sup = rows[k].sup;
            rep.argmax = {sources[k], targets[rows[k].arg_t]};
        }
    }
    return rep;
}

double claim_t1_lambda(const GluedSpace& m_rho, const GluedSpace& m_rho_tilde,
                       const std::vector<std::string>& w_ids, int workers) {
    for (const auto& id : w_ids)
        if (!m_rho.graph.has_vertex(id) || !m_rho_tilde.graph.has_vertex(id))
            throw std::invalid_argument("claim_t1_lambda: W sets differ between the spaces");
    return sup_distance_difference(m_rho.graph, m_rho_tilde.graph, w_ids, w_ids, workers).sup;
}

namespace {

struct PipeScaffold {
    SphereGraph base;
    SphereGraph tilde;
    double ds = 0.0;
    double delta = 0.0;
    int delta_ring = 3; // cap ring index sitting exactly at arc radius delta
};

PipeScaffold build_pipe_scaffold(const PipeParams& p, const AxisymmetricBlendedField& g_field,
                                 const AxisymmetricBlendedField& gt_field) {
    PipeScaffold sc;
    sc.delta = p.delta_fraction * p.rho;
    sc.ds = sc.delta / 3.0;
    int k_ext = static_cast<int>(std::ceil(1.34 * p.rho / sc.ds));
    double extent = k_ext * sc.ds;

    auto make_spec = [&](const char* prefix, int sign) {
        CapGridSpec spec;
        spec.prefix = prefix;
        spec.pole = {0.0, 0.0, static_cast<double>(sign)};
        spec.extent_s = extent;
        spec.ring_step = sc.ds;
        spec.include_center = true;
        spec.r_of_s = [&g_field, sign](double s) { return g_field.round_radius_of_arc(sign, s); };
        return spec;
    };
    std::vector<CapGridSpec> specs{make_spec("cap/p", +1), make_spec("cap/q", -1)};
    SphereGraphOptions opts;
    opts.workers = p.workers;
    sc.base = build_sphere_graph(p.h, g_field, specs, opts);
    sc.tilde = build_sphere_graph(p.h, gt_field, specs, opts);
    if (sc.base.manifold.ids() != sc.tilde.manifold.ids())
        throw ConstructionError("pipe scaffold: base and mollified layouts diverged");
    return sc;
}

/// Removes the sub-delta cap interior and splices the warped tunnel grid
/// between the two delta-rings.
GluedSpace splice_pipe_tunnel(const SphereGraph& sphere, const PipeScaffold& sc,
                              const TunnelModel& tunnel, double kappa, int j_sched) {
    const SampledManifold& m = sphere.manifold;
    std::vector<char> removed(m.size(), 0);
    for (const auto& cap : sphere.caps) {
        if (cap.center_index != UINT32_MAX) removed[cap.center_index] = 1;
        for (int k = 1; k < sc.delta_ring; ++k)
            for (auto v : cap.ring_vertices[k - 1]) removed[v] = 1;
    }
    auto [graph, remap] = remove_vertices(m, removed);

    auto ring_of = [&](const CapGridInfo& cap) {
        std::vector<std::uint32_t> ring;
        for (auto v : cap.ring_vertices[sc.delta_ring - 1]) {
            if (remap[v] == UINT32_MAX)
                throw ConstructionError("splice_pipe_tunnel: delta ring vertex was removed");
            ring.push_back(remap[v]);
        }
        return ring;
    };
    auto p_ring = ring_of(sphere.caps[0]);
    auto q_ring = ring_of(sphere.caps[1]);
    const int m_p = static_cast<int>(p_ring.size());
    const int m_q = static_cast<int>(q_ring.size());
    const int m_t = std::max(m_p, m_q);
    const int n_ax = std::max(2, static_cast<int>(std::llround(tunnel.L / sc.ds)));
    const double da = tunnel.L / n_ax;

    // interior grid rows 1 .. n_ax-1
    std::vector<std::vector<std::uint32_t>> rows(n_ax + 1);
    char buf[96];
    for (int r = 1; r < n_ax; ++r) {
        rows[r].resize(m_t);
        double a = r * da;
        double w = tunnel.radius_at(a);
        for (int jj = 0; jj < m_t; ++jj) {
            double theta = 2.0 * M_PI * jj / m_t;
            std::snprintf(buf, sizeof(buf), "tunnel/r%03d/a%04d", r, jj);
            // embedding is only cosmetic for tunnel vertices
            V3 pos{0.1 * w * std::cos(theta), 0.1 * w * std::sin(theta), 1.0 + a};
            rows[r][jj] = static_cast<std::uint32_t>(graph.add_vertex(buf, pos));
        }
    }
    rows[0] = p_ring;
    rows[n_ax] = q_ring;

    auto seg_len = [&](double a0, double a1, double dtheta) {
        return gauss_legendre(
            [&](double t) {
                double a = a0 + (a1 - a0) * t;
                double w = tunnel.radius_at(a);
                return std::sqrt((a1 - a0) * (a1 - a0) + w * w * dtheta * dtheta);
            },
            0.0, 1.0, 8);
    };

    for (int r = 1; r < n_ax; ++r) {
        double a = r * da;
        double w = tunnel.radius_at(a);
        for (int jj = 0; jj < m_t; ++jj) {
            graph.add_edge(rows[r][jj], rows[r][(jj + 1) % m_t], w * 2.0 * M_PI / m_t);
            if (r + 1 < n_ax) {
                graph.add_edge(rows[r][jj], rows[r + 1][jj], seg_len(a, a + da, 0.0));
                graph.add_edge(rows[r][jj], rows[r + 1][(jj + 1) % m_t],
                               seg_len(a, a + da, 2.0 * M_PI / m_t));
                graph.add_edge(rows[r][jj], rows[r + 1][(jj + m_t - 1) % m_t],
                               seg_len(a, a + da, -2.0 * M_PI / m_t));
            }
        }
    }
    // knit first and last interior rows to the delta rings by nearest angles
    auto knit = [&](const std::vector<std::uint32_t>& end_ring, int m_end, int row,
                    double a_row, double a_end) {
        for (int jj = 0; jj < m_t; ++jj) {
            double theta = 2.0 * M_PI * jj / m_t;
            int jc = static_cast<int>(std::floor(theta / (2.0 * M_PI) * m_end));
            for (int d = 0; d <= 1; ++d) {
                int cc = (jc + d) % m_end;
                double theta_c = 2.0 * M_PI * cc / m_end;
                double dtheta = std::remainder(theta_c - theta, 2.0 * M_PI);
                graph.add_edge(rows[row][jj], end_ring[cc], seg_len(a_row, a_end, dtheta));
            }
        }
    };
    knit(p_ring, m_p, 1, da, 0.0);
    knit(q_ring, m_q, n_ax - 1, tunnel.L - da, tunnel.L);

    graph.finalize();
    if (!graph.connected())
        throw ConstructionError("splice_pipe_tunnel: tunnel splice disconnected the space");

    GluedSpace out;
    out.graph = std::move(graph);
    out.n_base = out.graph.size() - static_cast<std::size_t>(n_ax - 1) * m_t;
    out.ledger.add("base", kappa);
    out.ledger.add("tunnel floor", tunnel.scalar_floor);
    Attachment att;
    att.kind = Attachment::Kind::Tunnel;
    att.a_id = "cap/p/r003/a0000";
    att.b_id = "cap/q/r003/a0000";
    att.ell = tunnel.ell;
    att.delta = tunnel.delta;
    att.L = tunnel.L;
    out.attachments.push_back(att);
    return out;
}

GluedSpace string_space(const SphereGraph& sphere, double ell, double h, double kappa) {
    GluedSpace out;
    out.graph = sphere.manifold;
    out.n_base = out.graph.size();
    out.ledger.add("base", kappa);
    std::size_t p = out.graph.index_of("cap/p/center");
    std::size_t q = out.graph.index_of("cap/q/center");
    int segments = std::max(1, static_cast<int>(std::ceil(ell / h)));
    add_chain(out.graph, p, q, ell, "string/p-q", segments);
    out.graph.finalize();
    Attachment att;
    att.kind = Attachment::Kind::String;
    att.a_id = "cap/p/center";
    att.b_id = "cap/q/center";
    att.ell = ell;
    att.L = ell;
    out.attachments.push_back(att);
    return out;
}

} // namespace

PipeSpaces build_pipe_spaces(const PipeParams& p) {
    if (!(p.rho > 0.0) || !(p.ell_fraction > 0.0) || !(p.ell_fraction < 1.0))
        throw std::invalid_argument("build_pipe_spaces: bad rho or ell_fraction");
    if (!(p.delta_fraction > 0.0) || !(p.delta_fraction < 0.5))
        throw std::invalid_argument("build_pipe_spaces: delta must stay below rho/2");

    AxisymmetricBlendedField g_field(p.amplitude, 0.0, 0.0);
    AxisymmetricBlendedField gt_field(p.amplitude, p.rho, p.rho);
    PipeScaffold sc = build_pipe_scaffold(p, g_field, gt_field);

    PipeSpaces out;
    out.rho = p.rho;
    out.delta = sc.delta;

    auto d_base_p = geodesic_distance(sc.base.manifold, std::string("cap/p/center"));
    out.d_g_pq = d_base_p[sc.base.manifold.index_of("cap/q/center")];
    auto d_tilde_p = geodesic_distance(sc.tilde.manifold, std::string("cap/p/center"));
    out.d_gtilde_pq = d_tilde_p[sc.tilde.manifold.index_of("cap/q/center")];
    out.ell = p.ell_fraction * out.d_g_pq;
    if (!(out.ell < out.d_gtilde_pq))
        throw std::invalid_argument("build_pipe_spaces: ell >= d_gtilde(p,q), pick a smaller rho");

    out.inj_proxy = injectivity_radius_proxy(sc.base.manifold, "cap/p/center");
    if (!(p.rho <= out.inj_proxy))
        throw std::invalid_argument("build_pipe_spaces: rho exceeds the injectivity-radius proxy");

    int j_sched = p.j_schedule > 0 ? p.j_schedule
                                   : std::max(1, static_cast<int>(std::ceil(1.0 / p.rho)));
    out.tunnel = tunnel_make(sc.delta, out.ell, p.n_bound, p.kappa, j_sched);

    out.m_rho = splice_pipe_tunnel(sc.base, sc, out.tunnel, p.kappa, j_sched);
    out.m_rho_tilde = splice_pipe_tunnel(sc.tilde, sc, out.tunnel, p.kappa, j_sched);
    out.m_zero = string_space(sc.base, out.ell, p.h, p.kappa);
    out.m_zero_tilde = string_space(sc.tilde, out.ell, p.h, p.kappa);

    // shared W set and carrier ids; arc radii from the common chart
    const auto& m = sc.base.manifold;
    for (std::size_t v = 0; v < m.size(); ++v) {
        double s_p = g_field.arc_of_round_radius(+1, unit_angle(m.position(v), {0, 0, 1}));
        double s_q = g_field.arc_of_round_radius(-1, unit_angle(m.position(v), {0, 0, -1}));
        out.base_ids.push_back(m.ids()[v]);
        if (s_p >= p.rho && s_q >= p.rho) out.w_ids.push_back(m.ids()[v]);
    }

    // volume bookkeeping: lattice cells weighted by the conformal area
    // element, cap cells by the polar area element of the respective model
    std::size_t n_lattice_req = static_cast<std::size_t>(std::ceil(4.0 * M_PI / (p.h * p.h)));
    double lattice_cell = 4.0 * M_PI / static_cast<double>(n_lattice_req);
    auto accumulate = [&](const SphereGraph& sphere, const AxisymmetricBlendedField& field,
                          double& vol_M, double& vol_W) {
        vol_M = 0.0;
        vol_W = 0.0;
        for (std::size_t v = 0; v < sphere.manifold.size(); ++v) {
            const std::string& id = sphere.manifold.ids()[v];
            const V3& x = sphere.manifold.position(v);
            double cell;
            if (id.rfind("base/", 0) == 0) {
                double conf = field.conformal_factor(x);
                cell = lattice_cell * conf * conf;
            } else {
                continue; // cap cells handled per ring below
            }
            vol_M += cell;
            double s_p = field.arc_of_round_radius(+1, unit_angle(x, {0, 0, 1}));
            double s_q = field.arc_of_round_radius(-1, unit_angle(x, {0, 0, -1}));
            if (s_p >= p.rho && s_q >= p.rho) vol_W += cell;
        }
        for (const auto& cap : sphere.caps) {
            int sign = cap.pole.z > 0 ? +1 : -1;
            const RadialMetric& model = field.cap_model(sign);
            if (cap.center_index != UINT32_MAX) {
                double r0 = 0.25 * cap.ring_step;
                vol_M += M_PI * r0 * r0; // metric is smooth and round-like at the center
            }
            for (std::size_t k = 0; k < cap.ring_s.size(); ++k) {
                double s = cap.ring_s[k];
                double cell = cap.ring_step * (2.0 * M_PI / cap.ring_vertices[k].size()) *
                              std::sqrt(std::max(0.0, model(s, 0.0)));
                double total = cell * cap.ring_vertices[k].size();
                vol_M += total;
                if (s >= p.rho) vol_W += total;
            }
        }
    };
    accumulate(sc.base, g_field, out.vol_M_g, out.vol_W_g);
    accumulate(sc.tilde, gt_field, out.vol_M_gtilde, out.vol_W_gtilde);
    out.bdry_W_g = 2.0 * M_PI * (std::sqrt(g_field.cap_model(+1)(p.rho, 0.0)) +
                                 std::sqrt(g_field.cap_model(-1)(p.rho, 0.0)));
    out.bdry_W_gtilde = 2.0 * M_PI * (std::sqrt(gt_field.cap_model(+1)(p.rho, 0.0)) +
                                      std::sqrt(gt_field.cap_model(-1)(p.rho, 0.0)));
    return out;
}

double find_rho_zero(const PipeParams& params, double ell, double rho_lo, double rho_hi,
                     int iterations) {
    auto gate = [&](double rho) {
        PipeParams p = params;
        p.rho = rho;
        AxisymmetricBlendedField g_field(p.amplitude, 0.0, 0.0);
        AxisymmetricBlendedField gt_field(p.amplitude, rho, rho);
        PipeScaffold sc = build_pipe_scaffold(p, g_field, gt_field);
        auto d = geodesic_distance(sc.tilde.manifold, std::string("cap/p/center"));
        return ell < d[sc.tilde.manifold.index_of("cap/q/center")];
    };
    if (gate(rho_hi)) return rho_hi;
    if (!gate(rho_lo))
        throw std::invalid_argument("find_rho_zero: gate fails even at the smallest radius");
    double lo = rho_lo, hi = rho_hi;
    for (int it = 0; it < iterations; ++it) {
        double mid = 0.5 * (lo + hi);
        (gate(mid) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace flatlab
