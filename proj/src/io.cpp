#include "lpair/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace lpair::io {

namespace {

std::string describe_type(const json& j) { return j.type_name(); }

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object, got " + describe_type(j));
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

FieldSpec field_from_json(const json& j, const std::optional<FieldSpec>& override_field, const std::string& where) {
  if (override_field) return *override_field;
  const json& f = member(j, "field", where);
  if (!f.is_string()) throw InputError(where + ".field: expected a string, got " + describe_type(f));
  try {
    return FieldSpec::parse(f.get<std::string>());
  } catch (const FieldError& e) {
    throw InputError(where + ".field: " + e.what());
  }
}

json optional_element(const std::optional<FieldElement>& x) { return x ? to_json(*x) : json(nullptr); }

json axiom_json(const AxiomResult& r) {
  json out = {{"passed", r.passed}, {"detail", r.detail}};
  out["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
  return out;
}

}  // namespace

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // locate the byte offset as line/column
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON");
  }
}

json read_file(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
    return parse(buffer.str(), "<stdin>");
  }
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

json to_json(const FieldElement& x) { return x.to_string(); }

FieldElement element_from_json(const json& j, const FieldSpec& field, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string field element, got " + describe_type(j));
  try {
    return FieldElement::parse(field, j.get<std::string>());
  } catch (const FieldError& e) {
    throw InputError(where + ": " + e.what());
  }
}

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Vector vector_from_json(const json& j, const FieldSpec& field, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array, got " + describe_type(j));
  Vector out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(element_from_json(j[i], field, where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json to_json(const Polynomial& p) { return to_json(p.coefficients()); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return {{"field", m.field().to_string()}, {"rows", rows}};
}

Matrix matrix_from_json(const json& j, const std::optional<FieldSpec>& field, const std::string& where) {
  const FieldSpec spec = field_from_json(j, field, where);
  const json& rows = member(j, "rows", where);
  if (!rows.is_array() || rows.empty()) throw InputError(where + ".rows: expected a nonempty array of rows");
  std::vector<Vector> parsed;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    parsed.push_back(vector_from_json(rows[i], spec, where + ".rows[" + std::to_string(i) + "]"));
    if (parsed.back().size() != rows.size()) {
      throw InputError(where + ".rows[" + std::to_string(i) + "]: matrix must be square, row has " +
                       std::to_string(parsed.back().size()) + " entries, expected " + std::to_string(rows.size()));
    }
  }
  return Matrix::from_rows(spec, parsed);
}

json to_json(const ParameterArray& pa) {
  return {{"field", pa.field.to_string()}, {"d", pa.d},
          {"theta", to_json(pa.theta)},   {"theta_star", to_json(pa.theta_star)},
          {"varphi", to_json(pa.varphi)}, {"phi", to_json(pa.phi)}};
}

ParameterArray parray_from_json(const json& j, const std::optional<FieldSpec>& field, const std::string& where) {
  ParameterArray pa;
  pa.field = field_from_json(j, field, where);
  const json& d = member(j, "d", where);
  if (!d.is_number_unsigned()) throw InputError(where + ".d: expected a nonnegative integer");
  pa.d = d.get<std::size_t>();
  pa.theta = vector_from_json(member(j, "theta", where), pa.field, where + ".theta");
  pa.theta_star = vector_from_json(member(j, "theta_star", where), pa.field, where + ".theta_star");
  pa.varphi = vector_from_json(member(j, "varphi", where), pa.field, where + ".varphi");
  pa.phi = vector_from_json(member(j, "phi", where), pa.field, where + ".phi");
  try {
    pa.check_shape();
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
  return pa;
}

json to_json(const ValidityReport& r) {
  return {{"valid", r.valid()},
          {"axioms",
           {{"PA1", axiom_json(r.pa1)},
            {"PA2", axiom_json(r.pa2)},
            {"PA3", axiom_json(r.pa3)},
            {"PA4", axiom_json(r.pa4)},
            {"PA5", axiom_json(r.pa5)}}}};
}

json to_json(const AskeyWilsonCoefficients& c) {
  return {{"beta", to_json(c.beta)},     {"gamma", to_json(c.gamma)}, {"gamma_star", to_json(c.gamma_star)},
          {"rho", to_json(c.rho)},       {"rho_star", to_json(c.rho_star)}, {"omega", to_json(c.omega)},
          {"eta", to_json(c.eta)},       {"eta_star", to_json(c.eta_star)}, {"unique", c.unique}};
}

json to_json(const Fingerprint& f) {
  return {{"beta_plus_one", optional_element(f.beta_plus_one)},
          {"beta", optional_element(f.beta)},
          {"family", to_string(f.family)},
          {"q", optional_element(f.q)},
          {"q_field", f.q ? json(f.q_field) : json(nullptr)}};
}

json to_json(const GSearchResult& g) {
  return {{"found", g.g.has_value()},
          {"g", g.g ? to_json(*g.g) : json(nullptr)},
          {"solution_dimension", g.solution_dimension},
          {"pencil_exhausted", g.pencil_exhausted}};
}

json to_json(const ConverseReport& c) {
  return {{"relations_hold", c.relations_hold},
          {"q_status", to_string(c.q_status)},
          {"a_multiplicity_free", c.a_multiplicity_free},
          {"a_star_multiplicity_free", c.a_star_multiplicity_free},
          {"irreducible", c.irreducible},
          {"conclusion", c.conclusion},
          {"note", c.note}};
}

json verification_report(const Matrix& a, const Matrix& a_star) {
  const PairRecognition rec = is_leonard_pair(a, a_star);
  json out;
  out["is_leonard_pair"] = rec.is_leonard_pair;
  out["diameter"] = a.rows() - 1;
  out["orderings_found"] = rec.systems.size();
  if (rec.is_leonard_pair) {
    const ParameterArray pa = extract_parameter_array(*rec.witness);
    out["parameter_array"] = to_json(pa);
    const auto aw = fit_askey_wilson(a, a_star);
    out["askey_wilson"] = aw ? to_json(*aw) : json(nullptr);
    out["fingerprint"] = to_json(fingerprint(pa));
    out["failure_reason"] = nullptr;
  } else {
    out["parameter_array"] = nullptr;
    out["askey_wilson"] = nullptr;
    out["fingerprint"] = nullptr;
    out["failure_reason"] = rec.failure_reason;
  }
  return out;
}

}  // namespace lpair::io
