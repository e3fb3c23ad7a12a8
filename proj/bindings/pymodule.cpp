#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flatlab/cutoff.hpp"
#include "flatlab/experiment.hpp"
#include "flatlab/flat_bounds.hpp"
#include "flatlab/glued_space.hpp"
#include "flatlab/metric_space.hpp"
#include "flatlab/radial_metric.hpp"
#include "flatlab/sampled_manifold.hpp"
#include "flatlab/scalar_ledger.hpp"
#include "flatlab/slope.hpp"
#include "flatlab/tunnel.hpp"
#include "flatlab/version.hpp"

namespace py = pybind11;
using namespace flatlab;

PYBIND11_MODULE(_flatlab, m) {
    m.doc() = "metric-surgery spaces and intrinsic-flat-distance bound calculators";
    m.attr("__version__") = kVersion;

    py::class_<FiniteMetricSpace>(m, "FiniteMetricSpace")
        .def(py::init<std::vector<std::string>, std::vector<double>>(), py::arg("points"),
             py::arg("dist_row_major"))
        .def("size", &FiniteMetricSpace::size)
        .def("points", &FiniteMetricSpace::points)
        .def("at", &FiniteMetricSpace::at)
        .def("diameter", &FiniteMetricSpace::diameter)
        .def("to_csv", &FiniteMetricSpace::to_csv)
        .def_static("from_csv", &FiniteMetricSpace::from_csv);

    py::class_<MetricAxiomReport>(m, "MetricAxiomReport")
        .def_readonly("pass_", &MetricAxiomReport::pass)
        .def_readonly("worst_triangle_defect", &MetricAxiomReport::worst_triangle_defect)
        .def_readonly("worst_asymmetry", &MetricAxiomReport::worst_asymmetry)
        .def_readonly("worst_diagonal", &MetricAxiomReport::worst_diagonal);

    py::class_<BilipschitzReport>(m, "BilipschitzReport")
        .def_readonly("c_lower", &BilipschitzReport::c_lower)
        .def_readonly("C_upper", &BilipschitzReport::C_upper)
        .def_readonly("sup_abs_diff", &BilipschitzReport::sup_abs_diff);

    m.def("verify_metric_axioms", &verify_metric_axioms, py::arg("space"), py::arg("tau_metric"));
    m.def("bilipschitz_compare", &bilipschitz_compare);
    m.def("pullback_metric", &pullback_metric);
    m.def("uniform_distance", &uniform_distance);

    m.def("cutoff_phi", &cutoff_phi);
    m.def("cutoff_psi", &cutoff_psi);
    m.def("scale_scalar_curvature", &scale_scalar_curvature);

    py::class_<RadialMetric>(m, "RadialMetric")
        .def_readonly("rho_max", &RadialMetric::rho_max)
        .def_readonly("dim", &RadialMetric::dim)
        .def("angular", [](const RadialMetric& g, double r, double theta) { return g(r, theta); });
    m.def("round_radial", &round_radial, py::arg("rho_max"), py::arg("dim") = 2);
    m.def("scaled_round_radial", &scaled_round_radial, py::arg("tau"), py::arg("rho_max"),
          py::arg("dim") = 2);
    m.def("perturbed_round_radial", &perturbed_round_radial, py::arg("beta"), py::arg("rho_max"),
          py::arg("dim") = 2);
    m.def("mollify_ball_metric", &mollify_ball_metric);
    m.def(
        "metric_c2_deviation",
        [](const RadialMetric& g1, const RadialMetric& g2, double r_lo, double r_hi) {
            return metric_c2_deviation(g1, g2, r_lo, r_hi);
        },
        py::arg("g1"), py::arg("g2"), py::arg("r_lo"), py::arg("r_hi"));
    py::class_<SphereCheckReport>(m, "SphereCheckReport")
        .def_readonly("deviation", &SphereCheckReport::deviation)
        .def_readonly("allowance", &SphereCheckReport::allowance)
        .def_readonly("pass_", &SphereCheckReport::pass);
    m.def("geodesic_sphere_check", &geodesic_sphere_check, py::arg("g"), py::arg("eps"),
          py::arg("tol") = 0.05);

    py::class_<SampledManifold>(m, "SampledManifold")
        .def("size", &SampledManifold::size)
        .def("ids", &SampledManifold::ids)
        .def("vertices_csv", &SampledManifold::vertices_csv)
        .def("edges_csv", &SampledManifold::edges_csv)
        .def_readonly("resolution", &SampledManifold::resolution)
        .def_readonly("generator", &SampledManifold::generator);
    m.def("build_round_sphere", &build_round_sphere, py::arg("h"), py::arg("tau") = 1.0);
    m.def("build_cylinder", &build_cylinder, py::arg("h"), py::arg("length"),
          py::arg("warp") = std::function<double(double)>());
    m.def("geodesic_distance",
          [](const SampledManifold& m_, const std::string& src) {
              return geodesic_distance(m_, src);
          });
    m.def("min_distance_between", &min_distance_between);
    m.def("injectivity_radius_proxy", &injectivity_radius_proxy);

    py::class_<TunnelModel>(m, "TunnelModel")
        .def_readonly("delta", &TunnelModel::delta)
        .def_readonly("ell", &TunnelModel::ell)
        .def_readonly("L", &TunnelModel::L)
        .def_readonly("vol", &TunnelModel::vol)
        .def_readonly("scalar_floor", &TunnelModel::scalar_floor)
        .def("radius_at", &TunnelModel::radius_at);
    m.def("tunnel_make", &tunnel_make, py::arg("delta"), py::arg("ell"), py::arg("n"),
          py::arg("kappa"), py::arg("j"), py::arg("A_model") = 4.0);

    py::class_<FlatBoundReport>(m, "FlatBoundReport")
        .def_readonly("a", &FlatBoundReport::a)
        .def_readonly("h", &FlatBoundReport::h)
        .def_readonly("h_bar", &FlatBoundReport::h_bar)
        .def_readonly("bound", &FlatBoundReport::bound);
    py::class_<LakzianSormaniInput>(m, "LakzianSormaniInput")
        .def(py::init<>())
        .def_readwrite("n", &LakzianSormaniInput::n)
        .def_readwrite("eps_bilip", &LakzianSormaniInput::eps_bilip)
        .def_readwrite("D_U1", &LakzianSormaniInput::D_U1)
        .def_readwrite("D_U2", &LakzianSormaniInput::D_U2)
        .def_readwrite("lambda_", &LakzianSormaniInput::lambda)
        .def_readwrite("vol_U1", &LakzianSormaniInput::vol_U1)
        .def_readwrite("vol_U2", &LakzianSormaniInput::vol_U2)
        .def_readwrite("vol_bdry_U1", &LakzianSormaniInput::vol_bdry_U1)
        .def_readwrite("vol_bdry_U2", &LakzianSormaniInput::vol_bdry_U2)
        .def_readwrite("vol_excess_1", &LakzianSormaniInput::vol_excess_1)
        .def_readwrite("vol_excess_2", &LakzianSormaniInput::vol_excess_2);
    m.def("lakzian_sormani_bound", &lakzian_sormani_bound);
    m.def("lakzian_sormani_bound_auto", &lakzian_sormani_bound_auto);
    m.def("lakzian_sormani_a_floor", &lakzian_sormani_a_floor);
    m.def("hls_bound", &hls_bound, py::arg("n"), py::arg("alpha"), py::arg("mass"),
          py::arg("eps_unif"));
    m.def("string_limit_bound", &string_limit_bound, py::arg("eps_net"), py::arg("c"),
          py::arg("mass"), py::arg("n"));
    m.def("pipe_bound", [](double rho, double a1, double a2, double a3) {
        PipeBoundReport rep = pipe_bound(rho, a1, a2, a3);
        return py::make_tuple(rep.value, rep.term_sqrt, rep.term_linear, rep.term_quadratic);
    });
    m.def("tunnels_to_strings_bound", [](double eps, std::size_t K, double per) {
        TunnelsToStringsReport rep = tunnels_to_strings_bound(eps, K, per);
        return py::make_tuple(rep.raw_sum, rep.normalized_constant, rep.N);
    });

    py::class_<SlopeFit>(m, "SlopeFit")
        .def_readonly("slope", &SlopeFit::slope)
        .def_readonly("intercept", &SlopeFit::intercept)
        .def_readonly("r_squared", &SlopeFit::r_squared);
    m.def("fit_slope", &fit_slope);
}
