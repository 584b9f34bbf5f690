// JSON-in, JSON-out bindings; the Python package turns the text into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "lpair/cli.hpp"
#include "lpair/field.hpp"
#include "lpair/generators.hpp"
#include "lpair/io.hpp"
#include "lpair/leonard.hpp"
#include "lpair/matrix.hpp"
#include "lpair/parray.hpp"

namespace py = pybind11;
using namespace lpair;
using io::json;

namespace {

json doc(const std::string& text, const char* what) { return io::parse(text, what); }

Matrix matrix_arg(const std::string& text, const char* what) { return io::matrix_from_json(doc(text, what), std::nullopt, what); }

ParameterArray array_arg(const std::string& text) { return io::parray_from_json(doc(text, "array"), std::nullopt, "array"); }

std::string pair_text(const Matrix& a, const Matrix& a_star) {
  json j;
  j["a"] = io::to_json(a);
  j["astar"] = io::to_json(a_star);
  return j.dump();
}

OffDiagonalSplit split_arg(const std::string& s) {
  if (s == "unit") return OffDiagonalSplit::unit;
  if (s == "symmetric") return OffDiagonalSplit::symmetric;
  throw std::invalid_argument("split must be 'unit' or 'symmetric'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Leonard pair toolkit";
  py::register_exception<FieldError>(m, "FieldError", PyExc_ValueError);

  m.def("verify", [](const std::string& a, const std::string& a_star) {
    return io::verification_report(matrix_arg(a, "a"), matrix_arg(a_star, "astar")).dump();
  });
  m.def("is_leonard_pair", [](const std::string& a, const std::string& a_star) {
    return is_leonard_pair(matrix_arg(a, "a"), matrix_arg(a_star, "astar")).is_leonard_pair;
  });
  m.def("extract_parameter_array", [](const std::string& a, const std::string& a_star) -> std::optional<std::string> {
    const PairRecognition rec = is_leonard_pair(matrix_arg(a, "a"), matrix_arg(a_star, "astar"));
    if (!rec.is_leonard_pair) return std::nullopt;
    return io::to_json(extract_parameter_array(*rec.witness)).dump();
  });
  m.def("fit_askey_wilson",
        [](const std::string& a, const std::string& a_star, const std::optional<std::string>& beta)
            -> std::optional<std::string> {
          const Matrix ma = matrix_arg(a, "a");
          std::optional<FieldElement> b;
          if (beta) b = FieldElement::parse(ma.field(), *beta);
          const auto c = fit_askey_wilson(ma, matrix_arg(a_star, "astar"), b);
          if (!c) return std::nullopt;
          return io::to_json(*c).dump();
        });
  m.def("char_poly", [](const std::string& a) { return io::to_json(char_poly(matrix_arg(a, "matrix"))).dump(); });

  m.def("validate", [](const std::string& pa) { return io::to_json(validate(array_arg(pa))).dump(); });
  m.def("construct_bidiagonal", [](const std::string& pa) {
    const ParameterArray p = array_arg(pa);
    require_valid(p);
    auto [a, a_star] = construct_bidiagonal(p);
    return pair_text(a, a_star);
  });
  m.def("construct_tridiagonal", [](const std::string& pa, const std::string& split) {
    const ParameterArray p = array_arg(pa);
    require_valid(p);
    auto [a, a_star] = construct_tridiagonal(p, split_arg(split));
    return pair_text(a, a_star);
  });
  m.def("find_g", [](const std::string& pa) { return io::to_json(find_g(array_arg(pa))).dump(); });
  m.def("poly_characterization", [](const std::string& pa) { return check_poly_characterization(array_arg(pa)).holds; });
  m.def("fingerprint", [](const std::string& pa) { return io::to_json(fingerprint(array_arg(pa))).dump(); });

  m.def("example_section2", [](const std::string& field) {
    const auto ex = example_section2(FieldSpec::parse(field));
    return pair_text(ex.a, ex.a_star);
  });
  m.def("sl2_pair", [](std::size_t d) {
    auto [a, a_star] = sl2_pair(d);
    return pair_text(a, a_star);
  });
  m.def("uq_pair", [](const std::string& field, const std::string& q, int epsilon, std::size_t d,
                      const std::string& alpha, const std::string& beta) {
    const FieldSpec f = FieldSpec::parse(field);
    const UqPair p = uq_pair(FieldElement::parse(f, q), epsilon, d, FieldElement::parse(f, alpha), FieldElement::parse(f, beta));
    json j = doc(pair_text(p.a, p.a_star), "pair");
    j["avoids_forbidden"] = p.avoids_forbidden;
    return j.dump();
  });
  m.def("lattice_pair", [](unsigned n, unsigned q, const std::string& alpha, const std::string& beta) {
    const SubspaceLattice lat = build_lattice(n, q);
    const auto dec = lattice_pair(lat, FieldElement::parse(lat.field, alpha), FieldElement::parse(lat.field, beta));
    json j = doc(pair_text(dec.a, dec.a_star), "pair");
    j["size"] = lat.points.size();
    json comps = json::array();
    for (const auto& c : dec.components) {
      comps.push_back({{"lowest_rank", c.lowest_rank},
                       {"d", c.d},
                       {"is_leonard_pair", c.recognition.is_leonard_pair},
                       {"a", io::to_json(c.a)},
                       {"astar", io::to_json(c.a_star)}});
    }
    j["components"] = comps;
    return j.dump();
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_tuple(code, out.str(), err.str());
  });
}
