#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nomavlc/allocate.hpp"
#include "nomavlc/channel.hpp"
#include "nomavlc/noise.hpp"
#include "nomavlc/rate.hpp"
#include "nomavlc/specfun.hpp"

namespace py = pybind11;
using namespace nomavlc;

PYBIND11_MODULE(_core, m) {
  m.doc() = "NOMA-VLC downlink numerics";

  py::class_<NoiseParams>(m, "NoiseParams")
      .def(py::init<>())
      .def(py::init([](double alpha, double beta, int nu, int truncation_m) {
             return NoiseParams{alpha, beta, nu, truncation_m};
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("nu") = 10,
           py::arg("truncation_m") = 10)
      .def_readwrite("alpha", &NoiseParams::alpha)
      .def_readwrite("beta", &NoiseParams::beta)
      .def_readwrite("nu", &NoiseParams::nu)
      .def_readwrite("truncation_m", &NoiseParams::truncation_m)
      .def("beta_prime", &NoiseParams::beta_prime);

  m.def("sample_phi", &sample_phi, py::arg("params"), py::arg("n"),
        py::arg("seed"));
  m.def("mgf", &mgf);
  m.def("pdf_series", &pdf_series);
  m.def("pdf_high_nu", &pdf_high_nu);
  m.def("cdf_series", &cdf_series);
  m.def("pdf_oracle", &pdf_oracle);

  m.def("lambertian_order", &lambertian_order);

  py::class_<MobilityModel>(m, "MobilityModel")
      .def_static("from_geometry", &MobilityModel::from_geometry,
                  py::arg("pd_area"), py::arg("led_height"), py::arg("r_max"),
                  py::arg("lambertian_m"))
      .def_static("from_bounds", &MobilityModel::from_bounds, py::arg("h_min"),
                  py::arg("h_max"), py::arg("lambertian_m"))
      .def_property_readonly("h_min", &MobilityModel::h_min)
      .def_property_readonly("h_max", &MobilityModel::h_max)
      .def_property_readonly("lambertian_m", &MobilityModel::lambertian_m)
      .def_property_readonly("k_norm", &MobilityModel::k_norm);

  m.def("mobility_pdf", &mobility_pdf);
  m.def("mobility_cdf", &mobility_cdf);
  m.def("mobility_inverse_cdf", &mobility_inverse_cdf);
  m.def("ordered_pdf", &ordered_pdf);
  m.def("mean_square_gain", &mean_square_gain);
  m.def("ordered_moment", &ordered_moment);

  py::class_<PowerVector>(m, "PowerVector")
      .def_readonly("powers", &PowerVector::powers)
      .def_readonly("total", &PowerVector::total);
  m.def("make_power_vector", &make_power_vector);

  m.def("rate_static", &rate_static);
  m.def("rate_sh", &rate_sh);
  m.def("entropy_y", &entropy_y);
  m.def("entropy_p", &entropy_p);
  m.def("entropy_phi", &entropy_phi);

  py::class_<MobilityRate>(m, "MobilityRate")
      .def_readonly("quadrature", &MobilityRate::quadrature)
      .def_readonly("closed_form", &MobilityRate::closed_form)
      .def_readonly("paper_form", &MobilityRate::paper_form)
      .def_readonly("pole_fallback", &MobilityRate::pole_fallback);
  m.def("expected_rate_user", &expected_rate_user);
  m.def("mc_rate_entropy", &mc_rate_entropy);
  m.def("mc_mobility_rate", &mc_mobility_rate);

  py::class_<QosSpec>(m, "QosSpec")
      .def(py::init([](std::vector<double> thresholds, double total_power) {
             QosSpec q;
             q.thresholds = std::move(thresholds);
             q.total_power = total_power;
             return q;
           }),
           py::arg("thresholds"), py::arg("total_power"))
      .def_readwrite("thresholds", &QosSpec::thresholds)
      .def_readwrite("total_power", &QosSpec::total_power)
      .def_readwrite("epsilon", &QosSpec::epsilon)
      .def_readwrite("max_iterations", &QosSpec::max_iterations);

  py::class_<AllocationResult>(m, "AllocationResult")
      .def_readonly("powers", &AllocationResult::powers)
      .def_readonly("iterations", &AllocationResult::iterations)
      .def_readonly("converged", &AllocationResult::converged)
      .def_readonly("constraint_residuals",
                    &AllocationResult::constraint_residuals)
      .def_readonly("achieved_rates", &AllocationResult::achieved_rates)
      .def_readonly("diagnostic", &AllocationResult::diagnostic);

  m.def("grpa", &grpa);
  m.def("allocate_static", &allocate_static);
  m.def("allocate_mobility", &allocate_mobility, py::arg("model"),
        py::arg("total_users"), py::arg("qos"), py::arg("noise"),
        py::arg("per_user_gains") = false);
  m.def("allocate_sh_baseline", &allocate_sh_baseline);

  m.def("gauss_2f1", &gauss_2f1);
  m.def("hermite",
        [](int n, double x, bool physicists) {
          return hermite(n, x,
                         physicists ? HermiteKind::physicists
                                    : HermiteKind::probabilists);
        },
        py::arg("n"), py::arg("x"), py::arg("physicists") = false);
}
