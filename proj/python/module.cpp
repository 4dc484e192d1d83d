#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hibi/certify.hpp"
#include "hibi/classify.hpp"
#include "hibi/cli.hpp"
#include "hibi/corpus.hpp"
#include "hibi/errors.hpp"
#include "hibi/report.hpp"

namespace py = pybind11;
using namespace hibi;

namespace {

Poset load(const std::string& text_or_name) {
  for (const auto& name : builtin_names())
    if (name == text_or_name) return builtin_poset(name);
  return parse_poset(text_or_name);
}

AlphaMatrix to_alpha(const std::vector<std::vector<std::int64_t>>& rows, std::int64_t q) {
  return make_alpha(Matrix::from_rows(rows), q);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hibi ring diagonal F-regularity certifier";
  py::register_exception<Error>(m, "HibiError", PyExc_ValueError);

  m.attr("version") = kToolVersion;

  m.def("builtin_names", &builtin_names);

  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        CommandResult r;
        {
          py::gil_scoped_release release;
          r = run_command(args, out, err);
        }
        return py::make_tuple(r.status, out.str(), err.str());
      },
      py::arg("args"), "Run one CLI command; returns (status, stdout, stderr).");

  m.def(
      "ideals",
      [](const std::string& poset) {
        const Poset p = load(poset);
        std::vector<std::vector<std::string>> out;
        for (const auto& I : enumerate_ideals(p)) {
          std::vector<std::string> names;
          for (Index v : I.members) names.push_back(p.name(v));
          out.push_back(names);
        }
        return out;
      },
      py::arg("poset"), "Order ideals of a poset given by text or corpus name.");

  m.def(
      "classify",
      [](const std::string& poset) {
        const Poset p = load(poset);
        return classification_json(p, classify_top_nodes(p)).dump();
      },
      py::arg("poset"), "Top-node classification as a JSON string.");

  m.def(
      "z_exponents", [](const std::string& poset) { return z_element(load(poset)).r; }, py::arg("poset"));

  m.def(
      "certify",
      [](const std::string& poset, int n, std::int64_t q, int jobs) {
        const Poset p = load(poset);
        CertifyOptions o;
        o.jobs = jobs;
        o.store_deltas = StoreDeltas::Off;
        Verdict v;
        {
          py::gil_scoped_release release;
          v = certify(p, n, q, o);
        }
        return verdict_json(p, v).dump();
      },
      py::arg("poset"), py::arg("n"), py::arg("q"), py::arg("jobs") = 1,
      "Decide every residue matrix at (n, q); returns the verdict as JSON.");

  m.def(
      "solve",
      [](const std::string& poset, const std::vector<std::vector<std::int64_t>>& alpha,
         std::int64_t q) -> std::optional<std::vector<std::vector<std::int64_t>>> {
        const auto r = solve(load(poset), to_alpha(alpha, q));
        if (!r.feasible()) return std::nullopt;
        return r.delta->to_rows();
      },
      py::arg("poset"), py::arg("alpha"), py::arg("q"), "Least delta for one residue matrix, or None.");

  m.def(
      "validate",
      [](const std::string& poset, const std::vector<std::vector<std::int64_t>>& alpha, std::int64_t q,
         const std::vector<std::vector<std::int64_t>>& delta) {
        std::vector<std::string> out;
        for (const auto& v : validate(load(poset), to_alpha(alpha, q), Matrix::from_rows(delta)))
          out.push_back(v.detail);
        return out;
      },
      py::arg("poset"), py::arg("alpha"), py::arg("q"), py::arg("delta"));

  m.def(
      "fold",
      [](const std::vector<std::pair<std::int64_t, std::int64_t>>& x) {
        std::vector<Rational> xs;
        for (auto [num, den] : x) {
          if (den == 0) throw PreconditionError("zero denominator");
          xs.emplace_back(num, den);
        }
        return fold_to_window(xs);
      },
      py::arg("x"), "Integer shift t for x given as (numerator, denominator) pairs.");

  m.def(
      "reproduce_c", [](std::int64_t q) { return theorem_c_json(reproduce_theorem_c(q)).dump(); }, py::arg("q"));
}
