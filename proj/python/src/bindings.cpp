#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "qsl2/cat.hpp"
#include "qsl2/check.hpp"
#include "qsl2/errors.hpp"
#include "qsl2/repmod.hpp"
#include "qsl2/scalars.hpp"
#include "qsl2/tangle.hpp"

namespace py = pybind11;
using namespace qsl2;

namespace {

ThetaChoice theta_from(const std::string& name) {
  if (name == "theta1") return ThetaChoice::theta1;
  if (name == "theta2") return ThetaChoice::theta2;
  throw ConfigError("theta must be 'theta1' or 'theta2', got '" + name + "'");
}

// Returns a JSON string; the Python side decodes it.
std::string invariant_json(const std::string& text, std::optional<std::string> ref, std::optional<int> cut,
                           std::optional<int> m, std::optional<int> l, const std::string& theta, bool rho,
                           std::optional<std::string> coupons, double tol) {
  TangleDocument doc = parse(text);
  const RootData ctx = make_root_data(m.value_or(doc.m.value_or(1)), l.value_or(doc.l.value_or(3)), tol);
  const std::string reference = ref ? *ref : doc.reference.value_or("");
  if (reference.empty()) throw ConfigError("no reference color");
  if (!doc.colors.count(reference)) throw ConfigError("undefined reference color '" + reference + "'");
  if (auto* d = std::get_if<TangleDiagram>(&doc.body); d && coupons) {
    d->coupons = parse_coupons(nlohmann::json::parse(*coupons));
  }
  Evaluator ev(ctx, doc.colors, {theta_from(theta), rho});
  InvariantResult r;
  if (const auto* braid = std::get_if<ColoredBraid>(&doc.body)) {
    r = braid_invariant(*braid, cut.value_or(braid->cut), reference, ev);
  } else {
    r = tangle_invariant(std::get<TangleDiagram>(doc.body), reference, ev);
  }
  auto c = [](cplx v) { return nlohmann::json::array({v.real(), v.imag()}); };
  return nlohmann::json{{"invariant", c(r.value)},
                        {"tangle_scalar", c(r.tangle_scalar)},
                        {"scalar_residual", r.scalar_residual},
                        {"sprime_vu", c(r.sprime_vu)},
                        {"sprime_uv", c(r.sprime_uv)},
                        {"cut", r.cut},
                        {"cut_color", r.cut_color}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  auto base = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(mod, "ConfigError", base.ptr());
  py::register_exception<DomainError>(mod, "DomainError", base.ptr());
  py::register_exception<DiagramError>(mod, "DiagramError", base.ptr());
  py::register_exception<ParseError>(mod, "ParseError", base.ptr());

  py::class_<RootData>(mod, "RootData")
      .def_readonly("m", &RootData::m)
      .def_readonly("l", &RootData::l)
      .def_readonly("t", &RootData::t)
      .def_readonly("eps", &RootData::eps)
      .def_readonly("tol", &RootData::tol)
      .def("__repr__", [](const RootData& c) {
        return "RootData(m=" + std::to_string(c.m) + ", l=" + std::to_string(c.l) + ")";
      });
  mod.def("make_root_data", &make_root_data, py::arg("m") = 1, py::arg("l") = 3, py::arg("tol") = 1e-9,
          py::arg("rel_tol") = 1e-8);
  mod.def("qint", &qint, py::arg("n"), py::arg("ctx"));

  py::class_<Color>(mod, "Color")
      .def(py::init([](cplx z, int k) { return Color{z, k}; }), py::arg("z"), py::arg("k"))
      .def_readwrite("z", &Color::z)
      .def_readwrite("k", &Color::k)
      .def("a", &Color::a)
      .def("__repr__", [](const Color& c) { return to_string(c); });

  py::class_<Rep>(mod, "Rep")
      .def_readonly("color", &Rep::color)
      .def_readonly("weights", &Rep::weights)
      .def_readonly("E", &Rep::E)
      .def_readonly("F", &Rep::F)
      .def_readonly("x", &Rep::x)
      .def_property_readonly("dim", &Rep::dim);
  mod.def("build_rep", &build_rep, py::arg("color"), py::arg("ctx"));
  mod.def("dual_rep", &dual_rep, py::arg("rep"), py::arg("ctx"));
  mod.def("act_K", &act_K, py::arg("rep"), py::arg("ctx"));
  mod.def("qdim", &qdim, py::arg("rep"), py::arg("ctx"));
  mod.def("qtrace", &qtrace, py::arg("f"), py::arg("rep"), py::arg("ctx"));
  mod.def("sprime", &sprime_brute, py::arg("u"), py::arg("v"), py::arg("ctx"), py::arg("rho") = true);
  mod.def("sprime_formula", &sprime_formula, py::arg("cu"), py::arg("cv"), py::arg("ctx"));
  mod.def("intertwiner_space", &intertwiner_space, py::arg("x"), py::arg("y"), py::arg("ctx"));

  mod.def("_invariant_json", &invariant_json, py::arg("text"), py::arg("ref") = py::none(),
          py::arg("cut") = py::none(), py::arg("m") = py::none(), py::arg("l") = py::none(),
          py::arg("theta") = "theta1", py::arg("rho") = true, py::arg("coupons") = py::none(),
          py::arg("tol") = 1e-9);

  mod.def(
      "_run_checks_json",
      [](int m, int l, double tol, const std::string& theta, bool rho, std::uint64_t seed) {
        CheckConfig cfg{m, l, tol, theta_from(theta), rho, seed};
        return reports_to_json(run_checks(cfg), {{"m", m}, {"l", l}, {"seed", seed}}).dump();
      },
      py::arg("m") = 1, py::arg("l") = 3, py::arg("tol") = 1e-9, py::arg("theta") = "theta1",
      py::arg("rho") = true, py::arg("seed") = 1);
}
