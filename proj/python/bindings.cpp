#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sheafcore/cli.hpp"
#include "sheafcore/cohomology.hpp"
#include "sheafcore/document.hpp"
#include "sheafcore/error.hpp"
#include "sheafcore/linalg.hpp"
#include "sheafcore/simplify.hpp"

namespace py = pybind11;
using namespace sheafcore;

namespace {

SheavedSpace checked_space(const std::string& text) {
  SheavedSpace sp = to_space(parse_document(text));
  if (auto r = check_commutativity(sp.sheaf()); !r) throw CommutativityError(r.lower, r.upper);
  return sp;
}

Matrix matrix_from(const std::vector<std::vector<std::string>>& rows, const std::string& field) {
  const Coefficients coeffs = Coefficients::parse(field);
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(coeffs, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, Scalar::parse(coeffs, rows[r][c]));
  }
  return m;
}

py::dict homology_dict(const HomologyResult& h) {
  py::list torsion;
  for (const auto& d : h.degrees) {
    py::list t;
    for (const auto& f : d.torsion) t.append(py::int_(py::str(f.get_str())));
    torsion.append(t);
  }
  py::dict out;
  out["betti"] = h.betti_numbers();
  out["torsion"] = torsion;
  out["minus_one"] = h.minus_one_rank;
  return out;
}

py::tuple simplified(const std::string& text, Strategy strategy, std::optional<std::uint64_t> seed) {
  const SpaceDocument doc = parse_document(text);
  SheavedSpace sp = to_space(doc);
  if (auto r = check_commutativity(sp.sheaf()); !r) throw CommutativityError(r.lower, r.upper);
  auto [result, trace] = simplify_pipeline(sp, strategy, RemovalOrder{seed});
  py::list steps;
  for (const auto& s : trace.steps) steps.append(py::make_tuple(s.removed, std::string(to_string(s.rule))));
  return py::make_tuple(
      serialize_document(from_space(result, doc.field, doc.sheaf.has_value()),
                         std::string(to_string(strategy))),
      steps);
}

}  // namespace

PYBIND11_MODULE(_sheafcore, m) {
  m.doc() = "Sheaves on finite posets: simplification and exact cohomology";
  m.attr("__version__") = std::string(kVersion);

  static py::exception<Error> error(m, "SheafcoreError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  m.def("validate", [](const std::string& text) { checked_space(text); },
        "Raise SheafcoreError unless the document is a valid commutative sheaf.");
  m.def("cohomology",
        [](const std::string& text, std::optional<std::size_t> max_degree) {
          return sheaf_cohomology(checked_space(text), max_degree).betti_numbers();
        },
        py::arg("text"), py::arg("max_degree") = py::none());
  m.def("homology",
        [](const std::string& text, bool reduced) {
          const SpaceDocument doc = parse_document(text);
          const OrderComplex k = order_complex(Poset::build(doc.elements, doc.covers));
          return homology_dict(reduced ? integral_reduced_homology(k) : integral_homology(k));
        },
        py::arg("text"), py::arg("reduced") = false);
  m.def("find_beats", [](const std::string& text) {
    py::list out;
    for (const auto& b : find_beats(checked_space(text)))
      out.append(py::make_tuple(b.element, b.kind == BeatKind::downbeat ? "downbeat" : "upbeat",
                                b.witness));
    return out;
  });
  m.def("simplify",
        [](const std::string& text, const std::string& strategy, std::optional<std::uint64_t> seed) {
          auto s = parse_strategy(strategy);
          if (!s) throw py::value_error("unknown strategy " + strategy);
          return simplified(text, *s, seed);
        },
        py::arg("text"), py::arg("strategy") = "beats", py::arg("seed") = py::none());
  m.def("core",
        [](const std::string& text, std::optional<std::uint64_t> seed) {
          return simplified(text, Strategy::beats_only, seed);
        },
        py::arg("text"), py::arg("seed") = py::none());
  m.def("rank",
        [](const std::vector<std::vector<std::string>>& rows, const std::string& field) {
          return rank(matrix_from(rows, field));
        },
        py::arg("rows"), py::arg("field") = "Q");
  m.def("smith_normal_form", [](const std::vector<std::vector<std::string>>& rows) {
    py::list out;
    for (const auto& d : smith_normal_form(matrix_from(rows, "Z")).diagonal)
      out.append(py::int_(py::str(d.get_str())));
    return out;
  });
  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
