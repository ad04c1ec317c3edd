#include <optional>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commham/commham.hpp"

namespace py = pybind11;
using namespace commham;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const json& j) { return j.dump(); }

HamClass hard_class(const CMat4& h) {
  HamClass c = classify(h);
  if (c.kind == HamKind::Exceptional) throw Error(ErrorCode::ExceptionalCase, "exceptional class");
  if (c.kind != HamKind::HardSymmetric && c.kind != HamKind::HardAsymmetric) {
    throw Error(ErrorCode::WrongKind, "needs a hard class");
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_commham, m) {
  m.doc() = "Two-qubit commuting Hamiltonians: classification, gadgets, simulation";

  static py::exception<Error> exc(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(exc.ptr())(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  m.def("is_commuting", [](const CMat4& h, double tol) { return is_commuting(h, tol); }, py::arg("h"),
        py::arg("tol") = kStructuralTol);
  m.def("pauli_expand", [](const CMat4& h) { return pauli_expand(h).alpha; }, py::arg("h"),
        "Real 4x4 coefficients c[i][j] of sigma_i (x) sigma_j, order I, X, Y, Z.");
  m.def(
      "local_diagonalize",
      [](const CMat4& h) {
        const LocalDiagonalization ld = local_diagonalize(h);
        return py::make_tuple(ld.u, ld.eigs, ld.residual);
      },
      py::arg("h"));
  m.def("classify_json", [](const CMat4& h, double tol) { return dump(to_json(classify(h, tol))); }, py::arg("h"),
        py::arg("tol") = kClassTol);
  m.def(
      "l_matrix",
      [](double t, double a_prime, const CMat2& u) { return l_matrix(t, make_symmetric_params(a_prime, u)).raw; },
      py::arg("t"), py::arg("a_prime"), py::arg("u"));
  m.def(
      "invert_json",
      [](const CMat4& h, double t, std::optional<double> t2) {
        const HamClass c = hard_class(h);
        const CanonicalParams& p = *c.params;
        if (!p.symmetric && !t2) throw Error(ErrorCode::InvalidArgument, "asymmetric class needs t2");
        return dump(to_json(p.symmetric ? invert_l(t, p) : invert_l2(t, *t2, p)));
      },
      py::arg("h"), py::arg("t"), py::arg("t2") = py::none());
  m.def(
      "lie_span_json",
      [](const CMat4& h, std::uint64_t seed) { return dump(to_json(verify_density(classify(h), seed))); },
      py::arg("h"), py::arg("seed") = 0);
  m.def(
      "synthesize_json",
      [](const CMat4& h, const CMat2& target, double eps, long budget, std::uint64_t seed) {
        const HamClass c = hard_class(h);
        return dump(to_json(synthesize(target, *c.params, eps, budget, seed)));
      },
      py::arg("h"), py::arg("target"), py::arg("eps") = 1e-2, py::arg("budget") = 100000, py::arg("seed") = 0);
  m.def(
      "output_distribution",
      [](const std::string& circuit_text) {
        const CircuitFile cf = circuit_from_json(json::parse(circuit_text));
        return Eigen::VectorXd(output_distribution(cf.spec, cf.model));
      },
      py::arg("circuit_json"));
  m.def(
      "sample",
      [](const std::string& circuit_text, int shots, std::uint64_t seed) {
        const CircuitFile cf = circuit_from_json(json::parse(circuit_text));
        return sample(cf.spec, cf.model, shots, seed);
      },
      py::arg("circuit_json"), py::arg("shots"), py::arg("seed") = 0);
}
