#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bdshift/error.hpp"
#include "bdshift/expr.hpp"
#include "commands.hpp"

namespace py = pybind11;
using namespace bdshift;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::handle& o) {
  return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

SupernaturalNumber modulus(const py::handle& o) { return supernatural_from_json(from_py(o)); }

Scalar scalar_arg(const py::handle& o) { return scalar_from_json(from_py(o)); }

GNSState gns_state(const std::string& s) {
  if (s == "tau0") return GNSState::Tau0;
  if (s == "haar") return GNSState::Haar;
  fail(ErrorKind::InvalidArgument, "state must be 'tau0' or 'haar'");
}

}  // namespace

PYBIND11_MODULE(_bdshift, m) {
  m.doc() = "Exact symbolic engine for shift algebras over profinite integers";

  // Messages start with the error kind, e.g. "SyntaxError: 1:3: ...".
  py::register_exception<Error>(m, "BdshiftError", PyExc_ValueError);

  py::class_<UnilateralElement>(m, "Unilateral")
      .def_static("identity", &UnilateralElement::identity)
      .def_static("shift", &UnilateralElement::shift)
      .def_static("shift_adjoint", &UnilateralElement::shift_adjoint)
      .def_static("vacuum_projection", &UnilateralElement::vacuum_projection)
      .def_static("from_json", [](const py::object& o) { return unilateral_from_json(from_py(o)); })
      .def("to_json", [](const UnilateralElement& a) { return to_py(to_json(a)); })
      .def("degrees", [](const UnilateralElement& a) {
        std::vector<std::int64_t> out;
        for (const auto& kv : a.terms()) out.push_back(kv.first);
        return out;
      })
      .def("is_zero", &UnilateralElement::is_zero)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", [](const UnilateralElement& a) { return format(a); })
      .def("__repr__", [](const UnilateralElement& a) { return "Unilateral(" + format(a) + ")"; });

  py::class_<BilateralElement>(m, "Bilateral")
      .def_static("identity", &BilateralElement::identity)
      .def_static("shift", &BilateralElement::shift)
      .def_static("shift_inverse", &BilateralElement::shift_inverse)
      .def_static("from_json", [](const py::object& o) { return bilateral_from_json(from_py(o)); })
      .def("to_json", [](const BilateralElement& b) { return to_py(to_json(b)); })
      .def("is_zero", &BilateralElement::is_zero)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", [](const BilateralElement& b) { return format(b); })
      .def("__repr__", [](const BilateralElement& b) { return "Bilateral(" + format(b) + ")"; });

  py::class_<Environment>(m, "Workspace")
      .def(py::init([](const py::object& o) { return o.is_none() ? Environment{} : environment_from_json(from_py(o)); }),
           py::arg("data") = py::none())
      .def_static("load", &load_environment)
      .def_property_readonly("N", [](const Environment& e) { return to_py(to_json(e.modulus)); })
      .def("unilateral", [](const Environment& e, const std::string& text) { return eval_unilateral(parse(text), e); })
      .def("bilateral", [](const Environment& e, const std::string& text) { return eval_bilateral(parse(text), e); })
      .def("derivation", [](const Environment& e, const std::string& name) {
        const auto it = e.derivations.find(name);
        require(it != e.derivations.end(), ErrorKind::UnknownName, "no derivation named '" + name + "'");
        return it->second;
      })
      .def("implementation", [](const Environment& e, const std::string& name) {
        const auto it = e.implementations.find(name);
        require(it != e.implementations.end(), ErrorKind::UnknownName, "no implementation named '" + name + "'");
        return it->second;
      });

  py::class_<DerivationSum>(m, "Derivation")
      .def_static("from_json",
                  [](const py::object& o, const py::object& n) {
                    if (n.is_none()) return derivation_from_json(from_py(o));
                    const SupernaturalNumber big_n = modulus(n);
                    return derivation_from_json(from_py(o), &big_n);
                  },
                  py::arg("data"), py::arg("N") = py::none())
      .def_static("inner", [](const UnilateralElement& x, const py::object& n) { return from_inner(x, modulus(n)); })
      .def("to_json", [](const DerivationSum& d) { return to_py(to_json(d)); })
      .def("__call__", [](const DerivationSum& d, const UnilateralElement& a) { return apply(d, a); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self == py::self);

  py::class_<BilateralDerivationSum>(m, "BilateralDerivation")
      .def("to_json", [](const BilateralDerivationSum& d) { return to_py(to_json(d)); })
      .def("__call__", [](const BilateralDerivationSum& d, const BilateralElement& b) { return bilateral_apply(d, b); })
      .def(py::self == py::self);

  py::class_<ImplementationData>(m, "Implementation")
      .def_static("from_json", [](const py::object& o, const py::object& n) { return implementation_from_json(from_py(o), modulus(n)); })
      .def("to_json", [](const ImplementationData& d) { return to_py(to_json(d)); });

  m.def("parse_unilateral", [](const std::string& text) { return eval_unilateral(parse(text), Environment{}); });
  m.def("parse_bilateral", [](const std::string& text) { return eval_bilateral(parse(text), Environment{}); });

  m.def("multiply", &multiply);
  m.def("adjoint", py::overload_cast<const UnilateralElement&>(&adjoint));
  m.def("adjoint", &bilateral_adjoint);
  m.def("commutator", &commutator);
  m.def("commutator", &bilateral_commutator);
  m.def("is_compact", &is_compact);
  m.def("spectral_component", &spectral_component);
  m.def("quotient", py::overload_cast<const UnilateralElement&>(&quotient));
  m.def("toeplitz", &toeplitz);
  m.def("mult_defect", &mult_defect);
  m.def("matrix_units", [](const py::object& n) { return matrix_units(modulus(n)); });
  m.def("to_matrix_form", [](const BilateralElement& b, const py::object& n) { return to_py(to_json(to_matrix_form(b, modulus(n)))); });

  m.def("classify", [](const DerivationSum& d, std::int64_t n) { return to_py(to_json(classify(d.component(n)))); });
  m.def("fejer_mean", &fejer_mean);
  m.def("fourier_component", [](const DerivationSum& d, std::int64_t n) { return DerivationSum::single(fourier_component(d, n)); });
  m.def("d_f_build", [](const py::object& f, const py::object& n) { return d_f_build(laurent_from_json(from_py(f)), modulus(n)); });
  m.def("extract_f", [](const DerivationSum& d) { return to_py(to_json(extract_f(d))); });
  m.def("quotient_derivation", py::overload_cast<const DerivationSum&>(&quotient_derivation));

  m.def("truncate", &truncate_unilateral, py::arg("a"), py::arg("M"));
  m.def("truncate_bilateral", &truncate_bilateral, py::arg("b"), py::arg("lo"), py::arg("hi"));
  m.def("norm_lower", [](const UnilateralElement& a, std::int64_t window) { return to_py(to_json(norm_lower(a, window))); });
  m.def("quotient_norm", [](const BilateralElement& b, const py::object& n, std::int64_t grid) {
    return to_py(to_json(quotient_norm_estimate(b, modulus(n), grid)));
  });

  m.def("tau0", [](const BilateralElement& b) { return to_string(tau0(b)); });
  m.def("tau_haar", [](const BilateralElement& b) { return to_string(tau_haar(b)); });
  m.def("build_D", [](const ImplementationData& d, const std::string& state, std::int64_t window) {
    return gns_state(state) == GNSState::Tau0 ? build_D_tau0(d, window) : build_D_haar(d, window);
  });
  m.def("parametrix_report", [](const ImplementationData& d, const std::string& state) {
    return to_py(to_json(parametrix_report(d, gns_state(state))));
  });

  m.def("scalar", [](const py::object& o) { return to_string(scalar_arg(o)); }, "Canonical text of a scalar literal");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"bdshift"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
