#include "flatlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "flatlab/errors.hpp"
#include "flatlab/fields.hpp"
#include "flatlab/flat_bounds.hpp"
#include "flatlab/glued_space.hpp"
#include "flatlab/metric_space.hpp"
#include "flatlab/radial_metric.hpp"
#include "flatlab/sampled_manifold.hpp"
#include "flatlab/slope.hpp"
#include "flatlab/util.hpp"
#include "flatlab/version.hpp"

namespace flatlab {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
}

json load_config(const ExperimentContext& ctx, const std::string& expected_kind) {
    json cfg = json::parse(read_text_file(ctx.config_path));
    if (!cfg.contains("schema_version") || cfg["schema_version"].get<int>() != 1)
        throw std::invalid_argument("config: schema_version must be 1");
    if (!cfg.contains("kind") || cfg["kind"].get<std::string>() != expected_kind)
        throw std::invalid_argument("config: expected kind '" + expected_kind + "'");
    return cfg;
}

std::string config_hash(const ExperimentContext& ctx) {
    return hex64(fnv1a64(read_text_file(ctx.config_path)));
}

void require_decreasing_positive(const std::vector<double>& v, const std::string& name) {
    if (v.size() < 1) throw std::invalid_argument("config: " + name + " is empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) throw std::invalid_argument("config: " + name + " must be positive");
        if (i > 0 && !(v[i] < v[i - 1]))
            throw std::invalid_argument("config: " + name + " must be strictly decreasing");
    }
}

void write_out(const ExperimentContext& ctx, const std::string& file, const std::string& text) {
    std::filesystem::create_directories(ctx.out_dir);
    write_text_file(ctx.out_dir + "/" + file, text);
}

std::vector<std::string> sample_ids(const std::vector<std::string>& ids, std::size_t count,
                                    std::uint64_t seed) {
    std::vector<std::size_t> idx(ids.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    count = std::min(count, idx.size());
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    std::vector<std::string> out;
    out.reserve(count);
    for (auto i : idx) out.push_back(ids[i]);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// pipe-sweep
// ---------------------------------------------------------------------------

RunResult run_pipe_convergence(const ExperimentContext& ctx) {
    json cfg = load_config(ctx, "pipe");
    check_keys(cfg,
               {"schema_version", "kind", "name", "resolution", "amplitude", "ell_fraction",
                "delta_fraction", "rho_values", "n_bound", "kappa", "slope_targets"},
               "pipe config");
    const std::string name = cfg.at("name").get<std::string>();
    const double h = cfg.at("resolution").get<double>();
    const double amp = cfg.at("amplitude").get<double>();
    const double ell_fraction = cfg.at("ell_fraction").get<double>();
    const double delta_fraction = cfg.at("delta_fraction").get<double>();
    const std::vector<double> rhos = cfg.at("rho_values").get<std::vector<double>>();
    const int n_bound = cfg.at("n_bound").get<int>();
    const double kappa = cfg.at("kappa").get<double>();
    require_decreasing_positive(rhos, "rho_values");
    const json& targets = cfg.at("slope_targets");
    check_keys(targets, {"lambda", "eps_rho", "c2_dev", "r2"}, "slope_targets");
    const double t_lambda = targets.at("lambda").get<double>();
    const double t_eps = targets.at("eps_rho").get<double>();
    const double t_c2 = targets.at("c2_dev").get<double>();
    const double t_r2 = targets.at("r2").get<double>();

    const std::string hash = config_hash(ctx);

    struct Row {
        double rho = 0, delta = 0, ell = 0, d_g_pq = 0, d_gtilde_pq = 0;
        double lambda = 0, lambda_mid = 0, eps_rho = 0, c2_dev = 0;
        double h_ls = 0, ls_bound_t1 = 0, hls_t3 = 0, alpha = 1;
        double pipe = 0, scalar_floor = 0, inj = 0;
        std::string dominant = "sqrt_rho", flag = "ok";
        bool valid = false;
    };
    std::vector<Row> rows(rhos.size());

    for (std::size_t k = 0; k < rhos.size(); ++k) {
        Row& row = rows[k];
        row.rho = rhos[k];
        try {
            PipeParams pp;
            pp.h = h;
            pp.amplitude = amp;
            pp.rho = rhos[k];
            pp.ell_fraction = ell_fraction;
            pp.delta_fraction = delta_fraction;
            pp.n_bound = n_bound;
            pp.kappa = kappa;
            pp.workers = ctx.workers;
            PipeSpaces ps = build_pipe_spaces(pp);

            row.delta = ps.delta;
            row.ell = ps.ell;
            row.d_g_pq = ps.d_g_pq;
            row.d_gtilde_pq = ps.d_gtilde_pq;
            row.inj = ps.inj_proxy;
            row.scalar_floor = ps.m_rho.ledger.floor();

            auto lam = sup_distance_difference(ps.m_rho.graph, ps.m_rho_tilde.graph, ps.w_ids,
                                               ps.w_ids, ctx.workers);
            row.lambda = lam.sup;
            auto mid = sup_distance_difference(ps.m_rho_tilde.graph, ps.m_zero_tilde.graph,
                                               ps.w_ids, ps.w_ids, ctx.workers);
            row.lambda_mid = mid.sup;
            auto eps = sup_distance_difference(ps.m_zero.graph, ps.m_zero_tilde.graph,
                                               ps.base_ids, ps.base_ids, ctx.workers);
            row.eps_rho = eps.sup;
            row.alpha = std::max(1.0, eps.ratio_max);

            AxisymmetricBlendedField g_field(amp, 0.0, 0.0);
            AxisymmetricBlendedField gt_field(amp, rhos[k], rhos[k]);
            row.c2_dev = metric_c2_deviation(gt_field.cap_model(+1), g_field.cap_model(+1),
                                             0.9 * rhos[k], rhos[k]);

            LakzianSormaniInput in;
            in.n = n_bound;
            in.eps_bilip = 0.0; // W carries the same metric tensor in both spaces
            in.D_U1 = lam.diam1;
            in.D_U2 = lam.diam2;
            in.lambda = row.lambda;
            in.vol_U1 = ps.vol_W_g;
            in.vol_U2 = ps.vol_W_gtilde;
            in.vol_bdry_U1 = ps.bdry_W_g;
            in.vol_bdry_U2 = ps.bdry_W_gtilde;
            in.vol_excess_1 = std::max(0.0, ps.vol_M_g - ps.vol_W_g) + ps.tunnel.vol;
            in.vol_excess_2 = std::max(0.0, ps.vol_M_gtilde - ps.vol_W_gtilde) + ps.tunnel.vol;
            FlatBoundReport ls = lakzian_sormani_bound(in, rhos[k]);
            row.h_ls = ls.h;
            row.ls_bound_t1 = ls.bound;
            row.hls_t3 = hls_bound(n_bound, row.alpha, ps.vol_M_g, row.eps_rho);
            row.valid = true;
        } catch (const std::exception& e) {
            row.flag = std::string("error:") + e.what();
        }
    }

    double A_T1 = 0.0, A_T2 = 0.0, A_T3 = 0.0;
    for (const Row& r : rows) {
        if (!r.valid) continue;
        A_T1 = std::max(A_T1, r.ls_bound_t1 / std::sqrt(r.rho));
        A_T2 = std::max(A_T2, r.lambda_mid / r.rho);
        A_T3 = std::max(A_T3, r.hls_t3 / (r.rho * r.rho));
    }
    const Row* prev = nullptr;
    for (Row& r : rows) {
        if (!r.valid) continue;
        PipeBoundReport pb = pipe_bound(r.rho, A_T1, A_T2, A_T3);
        r.pipe = pb.value;
        r.dominant = pb.dominant == PipeDominantTerm::SqrtRho
                         ? "sqrt_rho"
                         : (pb.dominant == PipeDominantTerm::Linear ? "linear" : "quadratic");
        if (prev && r.lambda > prev->lambda * (1.0 + 1e-9) && r.flag == "ok")
            r.flag = "lambda_nonmonotone";
        prev = &r;
    }

    std::ostringstream csv;
    csv << "config_hash,version,name,rho,delta,ell,d_g_pq,d_gtilde_pq,lambda,lambda_mid,eps_rho,"
           "c2_dev,alpha,h_ls,ls_bound_t1,hls_t3,A_T1,A_T2,A_T3,pipe_bound,dominant,scalar_floor,"
           "inj_proxy,flag\n";
    for (const Row& r : rows) {
        csv << hash << ',' << kVersion << ',' << name << ',' << format_double(r.rho) << ','
            << format_double(r.delta) << ',' << format_double(r.ell) << ','
            << format_double(r.d_g_pq) << ',' << format_double(r.d_gtilde_pq) << ','
            << format_double(r.lambda) << ',' << format_double(r.lambda_mid) << ','
            << format_double(r.eps_rho) << ',' << format_double(r.c2_dev) << ','
            << format_double(r.alpha) << ',' << format_double(r.h_ls) << ','
            << format_double(r.ls_bound_t1) << ',' << format_double(r.hls_t3) << ','
            << format_double(A_T1) << ',' << format_double(A_T2) << ',' << format_double(A_T3)
            << ',' << format_double(r.pipe) << ',' << r.dominant << ','
            << format_double(r.scalar_floor) << ',' << format_double(r.inj) << ',' << r.flag
            << '\n';
    }
    write_out(ctx, "rows.csv", csv.str());

    // slope fits over the valid rows
    std::vector<double> xs, l_ys, e_ys, c_ys;
    for (const Row& r : rows) {
        if (!r.valid) continue;
        xs.push_back(r.rho);
        l_ys.push_back(r.lambda);
        e_ys.push_back(r.eps_rho);
        c_ys.push_back(r.c2_dev);
    }
    bool pass = true;
    std::ostringstream fits;
    fits << "config_hash,version,name,series,slope,intercept,r_squared,slope_target,r2_target,"
            "pass\n";
    auto emit_fit = [&](const char* series, const std::vector<double>& ys, double target) {
        bool ok = false;
        double slope = 0, intercept = 0, r2 = 0;
        try {
            SlopeFit f = fit_slope(xs, ys);
            slope = f.slope;
            intercept = f.intercept;
            r2 = f.r_squared;
            ok = slope >= target && r2 >= t_r2;
        } catch (const std::exception&) {
            ok = false;
        }
        pass = pass && ok;
        fits << hash << ',' << kVersion << ',' << name << ',' << series << ','
             << format_double(slope) << ',' << format_double(intercept) << ','
             << format_double(r2) << ',' << format_double(target) << ',' << format_double(t_r2)
             << ',' << (ok ? "true" : "false") << '\n';
    };
    emit_fit("lambda", l_ys, t_lambda);
    emit_fit("eps_rho", e_ys, t_eps);
    emit_fit("c2_dev", c_ys, t_c2);
    write_out(ctx, "fits.csv", fits.str());

    std::string csv_back = read_text_file(ctx.out_dir + "/rows.csv");
    write_out(ctx, "pipe.svg",
              svg_loglog_from_csv(csv_back, "rho", {"lambda", "eps_rho", "c2_dev", "pipe_bound"},
                                  "single-pair surgery sweep: " + name));

    for (const Row& r : rows) pass = pass && r.valid;
    std::ostringstream summary;
    summary << "pipe sweep '" << name << "': " << rows.size() << " rows, A_T1=" << A_T1
            << " A_T2=" << A_T2 << " A_T3=" << A_T3 << (pass ? " [pass]" : " [fail]");
    return {pass, summary.str()};
}

// ---------------------------------------------------------------------------
// net-sweep
// ---------------------------------------------------------------------------

RunResult run_net_convergence(const ExperimentContext& ctx) {
    json cfg = load_config(ctx, "net");
    check_keys(cfg,
               {"schema_version", "kind", "name", "resolution", "scale_C", "eps_values", "n_bound",
                "kappa", "A_model", "per_surgery_constant", "eval_sample", "acceptance"},
               "net config");
    const std::string name = cfg.at("name").get<std::string>();
    const double h = cfg.at("resolution").get<double>();
    const double scale_C = cfg.at("scale_C").get<double>();
    const std::vector<double> eps_values = cfg.at("eps_values").get<std::vector<double>>();
    const int n_bound = cfg.at("n_bound").get<int>();
    const double kappa = cfg.at("kappa").get<double>();
    const double A_model = cfg.at("A_model").get<double>();
    const double per_surgery_A = cfg.at("per_surgery_constant").get<double>();
    const std::size_t eval_count = cfg.at("eval_sample").get<std::size_t>();
    require_decreasing_positive(eps_values, "eps_values");
    if (!(scale_C > 1.0)) throw std::invalid_argument("config: scale_C must exceed 1");
    const json& acc = cfg.at("acceptance");
    check_keys(acc, {"ratio_tol", "min_halving_factor", "normalized_constant_tol"}, "acceptance");
    const double ratio_tol = acc.at("ratio_tol").get<double>();
    const double min_halving = acc.at("min_halving_factor").get<double>();
    const double norm_tol = acc.at("normalized_constant_tol").get<double>();

    const std::string hash = config_hash(ctx);
    const double c = 1.0 / scale_C;

    SampledManifold base = build_round_sphere(h);
    const std::size_t nb = base.size();
    const std::size_t n_req = static_cast<std::size_t>(std::ceil(4.0 * M_PI / (h * h)));
    const double vol_M = 4.0 * M_PI * static_cast<double>(nb) / static_cast<double>(n_req);
    const double mass_d = std::pow(c, n_bound) * vol_M;

    // base all-pairs distances: target metric d = c * D_base and the string
    // lengths both read from this matrix
    std::vector<double> D(nb * nb, 0.0);
    parallel_for(nb, ctx.workers, [&](std::size_t s) {
        auto dist = geodesic_distance(base, s);
        std::copy(dist.begin(), dist.end(), D.begin() + s * nb);
    });

    auto eval_ids = sample_ids(base.ids(), eval_count, ctx.seed);
    std::vector<std::size_t> eval_idx;
    for (const auto& id : eval_ids) eval_idx.push_back(base.index_of(id));

    struct Row {
        double eps = 0;
        std::size_t N = 0, K = 0;
        double sup_dev = 0, twelve_eps = 0, ratio_min = 1, ratio_max = 1;
        double string_bound = 0, tunnels_raw = 0, norm_const = 0, total = 0;
        double vol_M = 0, sum_tunnel_vol = 0, scalar_floor = 0, rho = 0;
        bool axioms_d = false, axioms_y = false, axioms_x = false;
        bool row_pass = false;
        std::string flag = "ok";
        bool valid = false;
    };
    std::vector<Row> rows(eps_values.size());

    for (std::size_t k = 0; k < eps_values.size(); ++k) {
        Row& row = rows[k];
        row.eps = eps_values[k];
        row.twelve_eps = 12.0 * row.eps;
        row.vol_M = vol_M;
        try {
            EpsilonNet net = build_epsilon_net(base, row.eps, ctx.workers);
            PortedSphere ported = place_ports(base, net, ctx.workers);
            row.N = net.N();
            row.K = row.N * (row.N - 1) / 2;
            if (row.N < 2) throw ResolutionError("net has a single center; nothing to attach");

            // string lengths: d(q, q') = c * (graph distance through the
            // stitch anchors); exceeding the true glued distance is safe,
            // undercutting it would break d <= d_Y
            auto dg_ports = [&](std::uint32_t a, std::uint32_t b) {
                const auto& sa = ported.ports.stitches.at(a);
                const auto& sb = ported.ports.stitches.at(b);
                double best = kInfDist;
                for (const auto& [va, la] : sa)
                    for (const auto& [vb, lb] : sb)
                        best = std::min(best, la + D[static_cast<std::size_t>(va) * nb + vb] + lb);
                return best;
            };
            auto d_ports = [&](std::uint32_t a, std::uint32_t b) { return c * dg_ports(a, b); };

            StringOptions sopts;
            sopts.kappa_base = kappa;
            sopts.d_g_check = dg_ports;
            GluedSpace Y = attach_strings(ported, d_ports, sopts);

            TunnelRadii radii = choose_tunnel_radii(ported, {}, ctx.workers);
            double rho_uniform = row.eps / std::pow(static_cast<double>(row.N), 4.0);
            if (std::fabs(radii.max_rho - rho_uniform) > 1e-12 * rho_uniform)
                throw ConstructionError("net tunnel radii were capped below eps/N^4");
            row.rho = rho_uniform;
            TunnelAttachOptions topts;
            topts.dim = n_bound;
            topts.kappa = kappa;
            topts.A_model = A_model;
            GluedSpace X = attach_tunnels(ported, radii, d_ports, topts);
            for (const auto& att : X.attachments) row.sum_tunnel_vol += att.vol;
            row.scalar_floor = X.ledger.floor();

            // eval-sample metrics: d, d_Y, d_X
            const std::size_t ne = eval_ids.size();
            std::vector<double> dmat(ne * ne, 0.0), ymat(ne * ne, 0.0), xmat(ne * ne, 0.0);
            std::vector<std::size_t> y_idx(ne), x_idx(ne);
            for (std::size_t i = 0; i < ne; ++i) {
                y_idx[i] = Y.graph.index_of(eval_ids[i]);
                x_idx[i] = X.graph.index_of(eval_ids[i]);
            }
            parallel_for(ne, ctx.workers, [&](std::size_t i) {
                auto dy = geodesic_distance(Y.graph, y_idx[i]);
                auto dx = geodesic_distance(X.graph, x_idx[i]);
                for (std::size_t j = 0; j < ne; ++j) {
                    dmat[i * ne + j] = c * D[eval_idx[i] * nb + eval_idx[j]];
                    ymat[i * ne + j] = dy[y_idx[j]];
                    xmat[i * ne + j] = dx[x_idx[j]];
                }
            });
            for (std::size_t i = 0; i < ne; ++i)
                for (std::size_t j = i + 1; j < ne; ++j) {
                    double d = dmat[i * ne + j], dy = ymat[i * ne + j];
                    row.sup_dev = std::max(row.sup_dev, std::fabs(dy - d));
                    double ratio = dy / d;
                    row.ratio_min = std::min(row.ratio_min, ratio);
                    row.ratio_max = std::max(row.ratio_max, ratio);
                }

            FiniteMetricSpace fms_d(eval_ids, dmat), fms_y(eval_ids, ymat), fms_x(eval_ids, xmat);
            row.axioms_d = verify_metric_axioms(fms_d, 1e-6 * fms_d.diameter()).pass;
            row.axioms_y = verify_metric_axioms(fms_y, 1e-6 * fms_y.diameter()).pass;
            row.axioms_x = verify_metric_axioms(fms_x, 1e-6 * fms_x.diameter()).pass;

            row.string_bound = string_limit_bound(row.eps, c, mass_d, n_bound);
            double per_surgery = per_surgery_A * std::sqrt(rho_uniform / 2.0);
            TunnelsToStringsReport tts = tunnels_to_strings_bound(row.eps, row.K, per_surgery);
            row.tunnels_raw = tts.raw_sum;
            row.norm_const = tts.normalized_constant;
            row.total = row.string_bound + row.tunnels_raw;

            row.row_pass = row.sup_dev <= row.twelve_eps &&
                           row.ratio_min >= 1.0 - ratio_tol &&
                           row.ratio_max <= scale_C + ratio_tol && row.axioms_d && row.axioms_y &&
                           row.axioms_x;
            if (!row.row_pass && row.flag == "ok") row.flag = "row_checks_failed";
            row.valid = true;
        } catch (const std::exception& e) {
            row.flag = std::string("error:") + e.what();
        }
    }

    bool pass = true;
    for (const Row& r : rows) pass = pass && r.valid && r.row_pass;

    // composite decrease per halving once eps <= 0.2, and the
    // eps-independence of the sqrt-normalized constant
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        if (!rows[k].valid || !rows[k + 1].valid) continue;
        bool is_halving = std::fabs(rows[k + 1].eps - 0.5 * rows[k].eps) < 1e-9 * rows[k].eps;
        if (is_halving && rows[k].eps <= 0.2 + 1e-12)
            pass = pass && rows[k].total >= min_halving * rows[k + 1].total;
    }
    {
        double lo = kInfDist, hi = 0.0;
        for (const Row& r : rows)
            if (r.valid) {
                lo = std::min(lo, r.norm_const);
                hi = std::max(hi, r.norm_const);
            }
        if (hi > 0.0) pass = pass && (hi - lo) <= norm_tol * (0.5 * (hi + lo));
    }

    std::ostringstream csv;
    csv << "config_hash,version,name,eps,N,K,rho,sup_dY_minus_d,twelve_eps,ratio_min,ratio_max,"
           "inv_c,string_bound,tunnels_raw,normalized_constant,total_bound,vol_M,sum_tunnel_vol,"
           "scalar_floor,axioms_d,axioms_dY,axioms_dX,flag\n";
    for (const Row& r : rows) {
        csv << hash << ',' << kVersion << ',' << name << ',' << format_double(r.eps) << ',' << r.N
            << ',' << r.K << ',' << format_double(r.rho) << ',' << format_double(r.sup_dev) << ','
            << format_double(r.twelve_eps) << ',' << format_double(r.ratio_min) << ','
            << format_double(r.ratio_max) << ',' << format_double(scale_C) << ','
            << format_double(r.string_bound) << ',' << format_double(r.tunnels_raw) << ','
            << format_double(r.norm_const) << ',' << format_double(r.total) << ','
            << format_double(r.vol_M) << ',' << format_double(r.sum_tunnel_vol) << ','
            << format_double(r.scalar_floor) << ',' << (r.axioms_d ? "true" : "false") << ','
            << (r.axioms_y ? "true" : "false") << ',' << (r.axioms_x ? "true" : "false") << ','
            << r.flag << '\n';
    }
    write_out(ctx, "rows.csv", csv.str());
    std::string csv_back = read_text_file(ctx.out_dir + "/rows.csv");
    write_out(ctx, "net.svg",
              svg_loglog_from_csv(csv_back, "eps",
                                  {"sup_dY_minus_d", "string_bound", "total_bound"},
                                  "net sweep: " + name));

    std::ostringstream summary;
    summary << "net sweep '" << name << "': " << rows.size() << " rows"
            << (pass ? " [pass]" : " [fail]");
    return {pass, summary.str()};
}

// ---------------------------------------------------------------------------
// bounds-golden
// ---------------------------------------------------------------------------

RunResult run_bound_calculators(const ExperimentContext& ctx) {
    json cfg = load_config(ctx, "bounds");
    check_keys(cfg, {"schema_version", "kind", "name", "hls_rows", "ls_rows", "expected_csv"},
               "bounds config");
    const std::string name = cfg.at("name").get<std::string>();
    const std::string hash = config_hash(ctx);

    std::ostringstream csv;
    csv << "config_hash,version,name,calculator,row,inputs,h,h_bar,value\n";
    std::size_t row_no = 0;
    for (const auto& r : cfg.at("hls_rows")) {
        int n = r.at(0).get<int>();
        double alpha = r.at(1).get<double>();
        double mass = r.at(2).get<double>();
        double eps = r.at(3).get<double>();
        std::string value;
        try {
            value = format_double(hls_bound(n, alpha, mass, eps));
        } catch (const std::exception& e) {
            value = std::string("ERROR:") + e.what();
        }
        csv << hash << ',' << kVersion << ',' << name << ",hls," << row_no++ << ','
            << "n=" << n << ";alpha=" << format_double(alpha) << ";mass=" << format_double(mass)
            << ";eps=" << format_double(eps) << ",,," << value << '\n';
    }
    for (const auto& r : cfg.at("ls_rows")) {
        LakzianSormaniInput in;
        in.n = r.at(0).get<int>();
        in.eps_bilip = r.at(1).get<double>();
        in.D_U1 = r.at(2).get<double>();
        in.D_U2 = r.at(3).get<double>();
        in.lambda = r.at(4).get<double>();
        in.vol_U1 = r.at(5).get<double>();
        in.vol_U2 = r.at(6).get<double>();
        in.vol_bdry_U1 = r.at(7).get<double>();
        in.vol_bdry_U2 = r.at(8).get<double>();
        in.vol_excess_1 = r.at(9).get<double>();
        in.vol_excess_2 = r.at(10).get<double>();
        double a = r.at(11).get<double>();
        std::string h_s, hbar_s, value;
        try {
            FlatBoundReport rep = a < 0.0 ? lakzian_sormani_bound_auto(in)
                                          : lakzian_sormani_bound(in, a);
            h_s = format_double(rep.h);
            hbar_s = format_double(rep.h_bar);
            value = format_double(rep.bound);
        } catch (const std::exception& e) {
            value = std::string("ERROR:") + e.what();
        }
        csv << hash << ',' << kVersion << ',' << name << ",ls," << row_no++ << ','
            << "n=" << in.n << ";eps=" << format_double(in.eps_bilip)
            << ";D1=" << format_double(in.D_U1) << ";D2=" << format_double(in.D_U2)
            << ";lambda=" << format_double(in.lambda) << ";a=" << format_double(a) << ',' << h_s
            << ',' << hbar_s << ',' << value << '\n';
    }
    write_out(ctx, "golden.csv", csv.str());

    bool pass = true;
    std::string summary = "bounds golden '" + name + "': " + std::to_string(row_no) + " rows";
    if (cfg.contains("expected_csv")) {
        std::string expected = read_text_file(cfg.at("expected_csv").get<std::string>());
        pass = expected == csv.str();
        summary += pass ? " [matches golden]" : " [GOLDEN MISMATCH]";
    }
    return {pass, summary};
}

// ---------------------------------------------------------------------------
// slope
// ---------------------------------------------------------------------------

RunResult run_slope_fit(const ExperimentContext& ctx) {
    json cfg = load_config(ctx, "slope");
    check_keys(cfg, {"schema_version", "kind", "name", "xs", "ys"}, "slope config");
    const std::string name = cfg.at("name").get<std::string>();
    auto xs = cfg.at("xs").get<std::vector<double>>();
    auto ys = cfg.at("ys").get<std::vector<double>>();
    SlopeFit fit = fit_slope(xs, ys);
    std::ostringstream csv;
    csv << "config_hash,version,name,slope,intercept,r_squared\n";
    csv << config_hash(ctx) << ',' << kVersion << ',' << name << ',' << format_double(fit.slope)
        << ',' << format_double(fit.intercept) << ',' << format_double(fit.r_squared) << '\n';
    write_out(ctx, "fit.csv", csv.str());
    return {true, "slope fit '" + name + "': slope=" + format_double(fit.slope) +
                      " R2=" + format_double(fit.r_squared)};
}

RunResult run_experiment(const ExperimentContext& ctx) {
    json cfg = json::parse(read_text_file(ctx.config_path));
    std::string kind = cfg.value("kind", "");
    if (kind == "pipe") return run_pipe_convergence(ctx);
    if (kind == "net") return run_net_convergence(ctx);
    if (kind == "bounds") return run_bound_calculators(ctx);
    if (kind == "slope") return run_slope_fit(ctx);
    throw std::invalid_argument("config: unknown kind '" + kind + "'");
}

} // namespace flatlab
