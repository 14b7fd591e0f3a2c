#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wiretap/ensemble_sim.hpp"
#include "wiretap/exponents.hpp"
#include "wiretap/prob.hpp"
#include "wiretap/spec_file.hpp"
#include "wiretap/verify.hpp"

namespace py = pybind11;
using namespace wiretap;

PYBIND11_MODULE(_wiretap, m) {
  m.doc() = "Secrecy and reliability exponents of the wire-tap channel";

  py::register_exception<CapExceeded>(m, "CapExceeded");
  py::register_exception<SpecError>(m, "SpecError");

  py::class_<Distribution>(m, "Distribution")
      .def(py::init<std::vector<double>>())
      .def_static("uniform", &Distribution::uniform)
      .def_property_readonly("probs", &Distribution::probs)
      .def_property_readonly("full_support", &Distribution::full_support)
      .def("__len__", &Distribution::size)
      .def("__getitem__",
           [](const Distribution& d, int i) {
             if (i < 0 || i >= d.size()) throw py::index_error();
             return d[i];
           });

  py::class_<Channel>(m, "Channel")
      .def(py::init([](const std::vector<std::vector<double>>& rows) {
        std::vector<double> flat;
        for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
        return Channel(static_cast<int>(rows.size()),
                       rows.empty() ? 0 : static_cast<int>(rows[0].size()),
                       std::move(flat));
      }))
      .def_static("identity", &Channel::identity)
      .def_static("bsc", &Channel::bsc)
      .def_property_readonly("input_size", &Channel::input_size)
      .def_property_readonly("output_size", &Channel::output_size)
      .def("__call__",
           [](const Channel& c, int output, int input) {
             return c(output, input);
           },
           py::arg("output"), py::arg("input"));

  py::class_<JointXZ>(m, "JointXZ")
      .def(py::init<const Distribution&, const Channel&>())
      .def_property_readonly("marginal_x", &JointXZ::marginal_x)
      .def_property_readonly("marginal_z", &JointXZ::marginal_z)
      .def_property_readonly("posterior", &JointXZ::posterior);

  py::class_<WiretapInstance>(m, "WiretapInstance")
      .def(py::init<Distribution, Channel, Channel, double, double>(),
           py::arg("p_x"), py::arg("main_channel"),
           py::arg("wiretap_channel"), py::arg("rate"), py::arg("rate_prime"))
      .def_readonly("p_x", &WiretapInstance::p_x)
      .def_readonly("rate", &WiretapInstance::rate)
      .def_readonly("rate_prime", &WiretapInstance::rate_prime);

  py::class_<ExponentResult>(m, "ExponentResult")
      .def_readonly("value", &ExponentResult::value)
      .def_readonly("arg_lambda", &ExponentResult::arg_lambda)
      .def_readonly("boundary_hit", &ExponentResult::boundary_hit)
      .def("__repr__", [](const ExponentResult& r) {
        return "ExponentResult(value=" + std::to_string(r.value) +
               ", arg_lambda=" + std::to_string(r.arg_lambda) + ")";
      });

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("estimate", &SimResult::estimate)
      .def_readonly("std_error", &SimResult::std_error)
      .def_readonly("replicates", &SimResult::replicates)
      .def_readonly("exact", &SimResult::exact);

  m.def("output_marginal", &output_marginal);
  m.def("mutual_information", &mutual_information);
  m.def("kl_divergence", &kl_divergence);
  m.def("f0", py::overload_cast<const Distribution&, const Channel&, double>(
                  &f0));
  m.def("g0", &g0);
  m.def("secrecy_exponent", &secrecy_exponent, py::arg("p_x"), py::arg("w"),
        py::arg("r_prime"));
  m.def("secrecy_exponent_min_form", &secrecy_exponent_min_form,
        py::arg("p_x"), py::arg("w"), py::arg("r_prime"),
        py::arg("grid_resolution") = 400);
  m.def("gallager_e0", &gallager_e0);
  m.def("gallager_er", &gallager_er);
  m.def("corollary_exponent_pair", &corollary_exponent_pair);
  m.def("ensemble_mean_divergence", &ensemble_mean_divergence, py::arg("p_x"),
        py::arg("w"), py::arg("n"), py::arg("words_per_message"),
        py::arg("replicates"), py::arg("seed"));
  m.def(
      "exhaustive_ensemble_mean",
      [](const Distribution& p_x, const Channel& w, int n, int m_prime) {
        ExhaustiveMean ex = exhaustive_ensemble_mean(p_x, w, n, m_prime);
        return py::make_tuple(ex.result, ex.max_mean_gap);
      },
      py::arg("p_x"), py::arg("w"), py::arg("n"), py::arg("words_per_message"));
  m.def("empirical_exponent",
        [](const Distribution& p_x, const Channel& w, double r_prime,
           const std::vector<int>& n_list, std::uint64_t replicates,
           std::uint64_t seed, int words_cap) {
          py::list out;
          for (const EmpiricalExponentPoint& pt : empirical_exponent(
                   p_x, w, r_prime, n_list, replicates, seed, words_cap)) {
            out.append(py::dict(
                py::arg("n") = pt.n,
                py::arg("words_per_message") = pt.words_per_message,
                py::arg("mean_divergence") = pt.mean_divergence,
                py::arg("std_error") = pt.std_error,
                py::arg("exponent") = pt.exponent,
                py::arg("defined") = pt.defined));
          }
          return out;
        },
        py::arg("p_x"), py::arg("w"), py::arg("r_prime"), py::arg("n_list"),
        py::arg("replicates"), py::arg("seed"), py::arg("words_cap") = 64);
}
