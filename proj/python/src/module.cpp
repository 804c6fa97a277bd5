#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chainweight/constructions.hpp"
#include "chainweight/errors.hpp"
#include "chainweight/filtration.hpp"
#include "chainweight/fuzz.hpp"
#include "chainweight/homology.hpp"
#include "chainweight/homotopy.hpp"
#include "chainweight/io.hpp"
#include "chainweight/kzero.hpp"
#include "chainweight/weights.hpp"

namespace py = pybind11;
using namespace chainweight;

namespace {

py::dict homology_dict(const ChainComplex& x) {
  py::dict out;
  auto h = homology(x);
  for (const auto& [deg, group] : h.groups) out[py::int_(deg)] = group.to_string(x.ring());
  return out;
}

}  // namespace

PYBIND11_MODULE(_chainweight, m) {
  m.doc() = "Bounded chain complexes of free modules over Z and F_p";

  auto base = py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<MathNegative>(m, "MathNegative", PyExc_ArithmeticError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
  (void)base;

  py::class_<ChainComplex>(m, "Complex")
      .def_static("from_json", [](const std::string& s) { return parse_complex(s); }, py::arg("text"))
      .def("to_json", [](const ChainComplex& x) { return serialize_complex(x); })
      .def_property_readonly("ring", [](const ChainComplex& x) { return x.ring().name(); })
      .def_property_readonly("min_degree", &ChainComplex::min_degree)
      .def_property_readonly("max_degree", &ChainComplex::max_degree)
      .def("rank", &ChainComplex::rank, py::arg("degree"))
      .def("total_rank", &ChainComplex::total_rank)
      .def("is_zero", &ChainComplex::is_zero)
      .def("reduce", [](const ChainComplex& x, const std::string& ring) { return change_ring(x, RingSpec::parse(ring)); },
           py::arg("ring"))
      .def("shift", [](const ChainComplex& x, int k) { return shift(x, k); }, py::arg("k"))
      .def("__add__", [](const ChainComplex& x, const ChainComplex& y) { return direct_sum(x, y); })
      .def("__repr__", &ChainComplex::to_string);

  m.def("homology", &homology_dict, py::arg("x"), "nonzero homology groups by degree");
  m.def("is_acyclic", [](const ChainComplex& x) { return is_acyclic(x); }, py::arg("x"));
  m.def(
      "weights",
      [](const ChainComplex& x) -> std::optional<std::pair<int, int>> {
        auto w = weight_bounds(x);
        if (w.zero) return std::nullopt;
        return std::pair{w.lo, w.hi};
      },
      py::arg("x"), "tightest [lo, hi] with X in w>=lo and w<=hi, None for a zero object");
  m.def("in_heart", &in_heart, py::arg("x"));
  m.def("in_w_geq", &in_w_geq, py::arg("x"), py::arg("n"));
  m.def("in_w_leq", &in_w_leq, py::arg("x"), py::arg("n"));
  m.def(
      "decompose",
      [](const ChainComplex& x, int n) {
        auto d = weight_decompose(x, n);
        if (auto v = d.verify(); !v) throw InvariantViolation("weight decomposition failed: " + v.message);
        return std::pair{d.a, d.b};
      },
      py::arg("x"), py::arg("n"), "(A, B) with A -> X -> B, A in w<=n, B in w>=n+1");
  m.def(
      "orthogonal",
      [](const ChainComplex& x, const ChainComplex& y, int n) { return check_orthogonality(x, y, n).trivial; },
      py::arg("x"), py::arg("y"), py::arg("n"));
  m.def("euler_char", [](const ChainComplex& x) { return euler_char(x).value; }, py::arg("x"));
  m.def("euler_char_homology", [](const ChainComplex& x) { return euler_char_homology(x).value; }, py::arg("x"));
  m.def("k0", [](const ChainComplex& x) { return k0_via_filtration(skeletal_filtration(x)).value; }, py::arg("x"),
        "K0 class computed from the skeletal cell filtration");
  m.def("minimize", [](const ChainComplex& x) { return minimize(x).complex; }, py::arg("x"));
  m.def(
      "split_acyclic",
      [](const ChainComplex& x) {
        auto s = split_acyclic(x);
        if (auto v = s.verify(x); !v) throw InvariantViolation("acyclic splitting failed: " + v.message);
        return s.pieces;
      },
      py::arg("x"), "[(top_degree, count)] of elementary pieces; raises MathNegative if X is not acyclic");

  m.def("suites", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : suites()) out.emplace_back(s.name, s.description);
    return out;
  });
  m.def(
      "verify_json",
      [](const std::string& suite, std::uint64_t seed, std::size_t trials, const std::string& ring, int min_degree,
         int max_degree, std::size_t max_rank, long max_entry, std::size_t max_blocks) {
        GenParams p;
        p.seed = seed;
        p.ring = RingSpec::parse(ring);
        p.min_degree = min_degree;
        p.max_degree = max_degree;
        p.max_rank = max_rank;
        p.max_entry = max_entry;
        p.max_blocks = max_blocks;
        if (p.min_degree > p.max_degree || p.max_rank == 0 || p.max_entry < 1)
          throw UsageError("invalid generator bounds");
        py::gil_scoped_release release;
        return run_suite(suite, p, trials).to_json().dump();
      },
      py::arg("suite"), py::arg("seed") = 1, py::arg("trials") = 100, py::arg("ring") = "Z", py::arg("min_degree") = -4,
      py::arg("max_degree") = 4, py::arg("max_rank") = 6, py::arg("max_entry") = 3, py::arg("max_blocks") = 8);
}
