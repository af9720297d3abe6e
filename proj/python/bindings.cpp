#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "satcov/analytic.hpp"
#include "satcov/errors.hpp"
#include "satcov/geometry.hpp"
#include "satcov/montecarlo.hpp"
#include "satcov/params.hpp"
#include "satcov/runner.hpp"
#include "satcov/scenario.hpp"

namespace py = pybind11;
using namespace satcov;

PYBIND11_MODULE(_satcov, m) {
  m.doc() = "coverage analysis for clustered LEO satellite downlinks";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<NumericError>(m, "NumericError");

  py::enum_<Region>(m, "Region")
      .value("cluster", Region::cluster)
      .value("interference", Region::interference);
  py::enum_<ServeMode>(m, "ServeMode")
      .value("cluster", ServeMode::cluster)
      .value("nearest", ServeMode::nearest);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("earth_radius_km", &SystemParams::earth_radius_km)
      .def_readwrite("sat_orbit_radius_km", &SystemParams::sat_orbit_radius_km)
      .def_readwrite("min_elevation_rad", &SystemParams::min_elevation_rad)
      .def_readwrite("cluster_polar_angle_rad", &SystemParams::cluster_polar_angle_rad)
      .def_readwrite("sat_density_per_km2", &SystemParams::sat_density_per_km2)
      .def_readwrite("path_loss_exponent", &SystemParams::path_loss_exponent)
      .def_readwrite("nakagami_m", &SystemParams::nakagami_m)
      .def_readwrite("gain_inside", &SystemParams::gain_inside)
      .def_readwrite("gain_outside", &SystemParams::gain_outside)
      .def_readwrite("sir_thresholds_db", &SystemParams::sir_thresholds_db)
      .def_readwrite("rng_seed", &SystemParams::rng_seed)
      .def_readwrite("mc_trials", &SystemParams::mc_trials)
      .def("validate", &SystemParams::validate);

  py::class_<ClusterGeometry>(m, "ClusterGeometry")
      .def_readonly("r_min_km", &ClusterGeometry::r_min_km)
      .def_readonly("r_clu_km", &ClusterGeometry::r_clu_km)
      .def_readonly("r_max_km", &ClusterGeometry::r_max_km)
      .def_readonly("dome_area_km2", &ClusterGeometry::dome_area_km2)
      .def_readonly("cluster_area_km2", &ClusterGeometry::cluster_area_km2)
      .def_readonly("outside_area_km2", &ClusterGeometry::outside_area_km2);

  m.def("make_cluster_geometry", &make_cluster_geometry, py::arg("params"));
  m.def("dome_area", &dome_area, py::arg("params"));
  m.def("max_slant_range", &max_slant_range, py::arg("params"));
  m.def("cluster_slant_range", &cluster_slant_range, py::arg("params"));
  m.def("distance_pdf", &distance_pdf);
  m.def("distance_cdf", &distance_cdf);
  m.def("db_to_linear", &db_to_linear, py::arg("db"));
  m.def("linear_to_db", &linear_to_db, py::arg("lin"));
  m.def("default_thresholds_db", &default_thresholds_db);

  py::class_<CampbellMoments>(m, "CampbellMoments")
      .def_readonly("mean", &CampbellMoments::mean)
      .def_readonly("variance", &CampbellMoments::variance);
  py::class_<GammaApprox>(m, "GammaApprox")
      .def_readonly("shape", &GammaApprox::shape)
      .def_readonly("scale", &GammaApprox::scale)
      .def_readonly("shape_floor", &GammaApprox::shape_floor)
      .def_readonly("shape_ceil", &GammaApprox::shape_ceil)
      .def_readonly("region", &GammaApprox::region);
  m.def("campbell_moments", &campbell_moments, py::arg("params"), py::arg("geometry"),
        py::arg("region"), py::arg("m"));
  m.def("gamma_params", &gamma_params, py::arg("params"), py::arg("geometry"),
        py::arg("region"), py::arg("m"));

  py::class_<BoundResult>(m, "BoundResult")
      .def_readonly("gamma_lin", &BoundResult::gamma_lin)
      .def_readonly("lower", &BoundResult::lower)
      .def_readonly("upper", &BoundResult::upper)
      .def_readonly("heuristic", &BoundResult::heuristic)
      .def_readonly("theorem", &BoundResult::theorem)
      .def_readonly("order_used", &BoundResult::order_used)
      .def_readonly("lower_defined", &BoundResult::lower_defined)
      .def_readonly("term_magnitudes", &BoundResult::term_magnitudes);
  m.def("coverage_bounds_theorem1", &coverage_bounds_theorem1, py::arg("params"),
        py::arg("geometry"), py::arg("m"), py::arg("gamma_lin"),
        py::arg("order_cap") = kDefaultOrderCap,
        py::arg("shape_override") = std::nullopt);
  m.def("coverage_bounds_theorem2", &coverage_bounds_theorem2, py::arg("params"),
        py::arg("geometry"), py::arg("m"), py::arg("gamma_lin"),
        py::arg("order_cap") = kDefaultOrderCap,
        py::arg("shape_override") = std::nullopt);
  m.def("coverage_heuristic", &coverage_heuristic, py::arg("bound_at_floor"),
        py::arg("bound_at_ceil"), py::arg("k"));
  m.def("spectral_efficiency",
        [](const std::vector<double>& gamma_lin, const std::vector<double>& pcov,
           double cost_c) { return spectral_efficiency(gamma_lin, pcov, cost_c); },
        py::arg("gamma_lin"), py::arg("pcov"), py::arg("cost_c"));

  py::enum_<SensitivityKind>(m, "SensitivityKind")
      .value("shape_wrt_cluster_range", SensitivityKind::shape_wrt_cluster_range)
      .value("scale_wrt_cluster_range", SensitivityKind::scale_wrt_cluster_range)
      .value("shape_wrt_m", SensitivityKind::shape_wrt_m)
      .value("scale_wrt_m", SensitivityKind::scale_wrt_m);
  py::class_<SensitivityResult>(m, "SensitivityResult")
      .def_readonly("value", &SensitivityResult::value)
      .def_readonly("at_boundary", &SensitivityResult::at_boundary);
  m.def("sensitivity", &sensitivity, py::arg("params"), py::arg("geometry"), py::arg("m"),
        py::arg("kind"), py::arg("region"));

  py::class_<ShadowedRicianParams>(m, "ShadowedRicianParams")
      .def(py::init<>())
      .def(py::init([](double m_, double b0, double omega) {
             return ShadowedRicianParams{m_, b0, omega};
           }),
           py::arg("m"), py::arg("b0"), py::arg("omega"))
      .def_readwrite("m", &ShadowedRicianParams::m)
      .def_readwrite("b0", &ShadowedRicianParams::b0)
      .def_readwrite("omega", &ShadowedRicianParams::omega);
  py::class_<FadeSpec>(m, "FadeSpec")
      .def_static("nakagami", &FadeSpec::nakagami, py::arg("m"))
      .def_static("shadowed_rician", &FadeSpec::shadowed_rician, py::arg("sr"));

  py::class_<CoveragePoint>(m, "CoveragePoint")
      .def_readonly("gamma_db", &CoveragePoint::gamma_db)
      .def_readonly("estimate", &CoveragePoint::estimate)
      .def_readonly("ci95_halfwidth", &CoveragePoint::ci95_halfwidth)
      .def_readonly("n_trials", &CoveragePoint::n_trials);
  py::class_<CoverageCurve>(m, "CoverageCurve")
      .def_readonly("points", &CoverageCurve::points)
      .def_readonly("mode", &CoverageCurve::mode);

  m.def(
      "estimate_coverage",
      [](const SystemParams& p, const ClusterGeometry& g, ServeMode mode,
         std::uint64_t trials, std::optional<FadeSpec> fade,
         std::optional<std::uint64_t> seed) {
        const FadeSpec f = fade ? *fade : FadeSpec::nakagami(p.nakagami_m);
        return estimate_coverage(p, g, mode, trials, f, seed ? *seed : p.rng_seed);
      },
      py::arg("params"), py::arg("geometry"), py::arg("mode") = ServeMode::cluster,
      py::arg("trials") = 100000, py::arg("fade") = std::nullopt,
      py::arg("seed") = std::nullopt);
  m.def(
      "sample_region_power",
      [](const SystemParams& p, const ClusterGeometry& g, Region region,
         std::optional<FadeSpec> fade, std::uint64_t trials,
         std::optional<std::uint64_t> seed) {
        const FadeSpec f = fade ? *fade : FadeSpec::nakagami(p.nakagami_m);
        return sample_region_power(p, g, region, f, trials, seed ? *seed : p.rng_seed);
      },
      py::arg("params"), py::arg("geometry"), py::arg("region"),
      py::arg("fade") = std::nullopt, py::arg("trials") = 100000,
      py::arg("seed") = std::nullopt);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def_readonly("variable", &SweepSpec::variable)
      .def_readonly("values", &SweepSpec::values);
  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("params", &Scenario::params)
      .def_readwrite("sweep", &Scenario::sweep)
      .def_readwrite("out_dir", &Scenario::out_dir);
  m.def("parse_scenario_text", &parse_scenario_text, py::arg("text"));
  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("parse_value_list", &parse_value_list, py::arg("text"));
  m.def("apply_sweep_value", &apply_sweep_value, py::arg("params"), py::arg("variable"),
        py::arg("value"));

  py::class_<RunOptions>(m, "RunOptions")
      .def(py::init<>())
      .def_readwrite("theorem", &RunOptions::theorem)
      .def_readwrite("mode", &RunOptions::mode)
      .def_readwrite("trials", &RunOptions::trials)
      .def_readwrite("seed", &RunOptions::seed)
      .def_readwrite("out_dir", &RunOptions::out_dir)
      .def_readwrite("dump_samples", &RunOptions::dump_samples);
  m.def("run_analyze", &run_analyze, py::arg("scenario"), py::arg("options"));
  m.def("run_simulate", &run_simulate, py::arg("scenario"), py::arg("options"));
  m.def("run_validate_gamma", &run_validate_gamma, py::arg("scenario"),
        py::arg("options"));
  m.def("run_sensitivity", &run_sensitivity, py::arg("scenario"), py::arg("options"));
  m.def("run_reproduce", &run_reproduce, py::arg("scenario"), py::arg("figure_id"),
        py::arg("options"));
}
