#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "json.hpp"
#include "regge/errors.hpp"
#include "regge/inverse.hpp"
#include "regge/scattering.hpp"
#include "regge/specfun.hpp"
#include "regge/verify.hpp"

namespace py = pybind11;
using namespace regge;
using nlohmann::json;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(to_py(v));
      return l;
    }
    default: {
      py::dict d;
      for (const auto& [k, v] : j.items()) d[py::str(k)] = to_py(v);
      return d;
    }
  }
}

// a JSON string or anything json.dumps accepts
Medium medium_from(const py::object& spec) {
  std::string text;
  if (py::isinstance<py::str>(spec)) {
    text = spec.cast<std::string>();
  } else {
    text = py::module_::import("json").attr("dumps")(spec).cast<std::string>();
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed medium: ") + e.what());
  }
  return medium_from_json(j);
}

JostSign sign_from(const std::string& s) {
  if (s == "+" || s == "plus") return JostSign::plus;
  if (s == "-" || s == "minus") return JostSign::minus;
  throw ConfigError("sign must be '+' or '-'");
}

}  // namespace

PYBIND11_MODULE(regge, m) {
  m.doc() = "Regge interpolation, phase shifts and flux recovery for radial magnetic media";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<FluxMismatch>(m, "FluxMismatch", base);
  py::register_exception<InsufficientTail>(m, "InsufficientTail", base);
  py::register_exception<DomainError>(m, "DomainError", base);

  m.def("gamma", &specfun::gamma_complex, py::arg("z"));
  m.def(
      "bessel",
      [](cplx nu, double r) {
        const auto b = specfun::bessel_h(nu, r);
        return py::dict(py::arg("J") = b.J, py::arg("Y") = b.Y, py::arg("H1") = b.H1, py::arg("H2") = b.H2,
                        py::arg("dJ") = b.dJ, py::arg("dY") = b.dY, py::arg("dH1") = b.dH1,
                        py::arg("dH2") = b.dH2);
      },
      py::arg("nu"), py::arg("r"), "J, Y, H1, H2 of complex order at r > 0, with r-derivatives.");

  py::class_<EffectivePotential>(m, "Medium")
      .def(py::init([](const py::object& spec) { return EffectivePotential(medium_from(spec)); }),
           py::arg("spec"), "From a medium JSON string or dict.")
      .def_static("load", [](const std::string& path) { return EffectivePotential(load_medium(path)); })
      .def_property_readonly("flux", &EffectivePotential::flux, "gamma(R) = flux / 2 pi")
      .def_property_readonly("r0", &EffectivePotential::r0)
      .def_property_readonly("R", &EffectivePotential::R)
      .def("q", [](const EffectivePotential& q, cplx nu, double r) { return q(nu, r); }, py::arg("nu"),
           py::arg("r"))
      .def("to_json", [](const EffectivePotential& q) { return to_py(q.medium().to_json()); });

  m.def(
      "jost_solve",
      [](const EffectivePotential& q, const std::string& sign, cplx nu, int n) {
        const auto s = jost_solve(q, sign_from(sign), nu, RadialGrid::hybrid(q.r0(), q.R(), n));
        return py::make_tuple(s.r, s.values, s.derivs);
      },
      py::arg("medium"), py::arg("sign"), py::arg("nu"), py::arg("grid") = 1024,
      "(r, F, F') on the hybrid grid over [r0, R].");
  m.def(
      "jost_functions",
      [](const EffectivePotential& q, cplx nu) {
        const auto j = jost_functions_exterior(q, nu);
        return py::make_tuple(j.alpha, j.beta);
      },
      py::arg("medium"), py::arg("nu"), "(alpha, beta)");
  m.def("sigma", [](const EffectivePotential& q, cplx nu) { return regge_sigma(q, nu); }, py::arg("medium"),
        py::arg("nu"));
  m.def(
      "phase_shifts",
      [](const EffectivePotential& q, int l_min, int l_max, int threads) {
        py::gil_scoped_release release;
        const auto d = phase_shifts(q, l_min, l_max, {}, threads);
        py::gil_scoped_acquire acquire;
        return to_py(d.to_json());
      },
      py::arg("medium"), py::arg("l_min") = -40, py::arg("l_max") = 40, py::arg("threads") = 0);
  m.def(
      "cam_scan",
      [](const EffectivePotential& q, const std::vector<cplx>& nus, int threads) {
        return to_py(cam_scan(q, nus, {}, threads).to_json());
      },
      py::arg("medium"), py::arg("nus"), py::arg("threads") = 0);
  m.def(
      "recover_flux",
      [](const EffectivePotential& q, int l_max, int threads) {
        return to_py(recover_flux(phase_shifts(q, 0, l_max, {}, threads)).to_json());
      },
      py::arg("medium"), py::arg("l_max") = 40, py::arg("threads") = 0,
      "Flux over 2 pi (mod 2) from the large-l behaviour of sigma.");
  m.def(
      "discriminate",
      [](const EffectivePotential& a, const EffectivePotential& b, const std::vector<int>& ls, int threads) {
        return to_py(discriminator_F(a, b, ls, {}, threads).to_json());
      },
      py::arg("a"), py::arg("b"), py::arg("ls") = std::vector<int>{1, 5, 10, 20}, py::arg("threads") = 0);
  m.def(
      "verify",
      [](std::optional<EffectivePotential> q, std::optional<double> tolerance, int grid, int threads) {
        VerifyConfig cfg;
        cfg.tolerance = tolerance;
        cfg.grid_n = grid;
        cfg.threads = threads;
        const EffectivePotential p = q ? *q : EffectivePotential(Medium{});
        return to_py(run_verify(p, cfg).to_json());
      },
      py::arg("medium") = py::none(), py::arg("tolerance") = py::none(), py::arg("grid") = 512,
      py::arg("threads") = 0);
}
