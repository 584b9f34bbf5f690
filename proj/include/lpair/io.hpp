#pragma once

/// @file io.hpp
/// JSON forms of fields, matrices, parameter arrays and reports. Field
/// elements are always serialized as strings.

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

#include "lpair/generators.hpp"
#include "lpair/leonard.hpp"
#include "lpair/parray.hpp"

namespace lpair::io {

using json = nlohmann::ordered_json;

/// Malformed or ill-typed input; the message names the offending location.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses JSON text; syntax errors report the source, line and column.
json parse(const std::string& text, const std::string& source);
/// Reads a file ("-" for standard input) and parses it.
json read_file(const std::string& path);

json to_json(const FieldElement& x);
FieldElement element_from_json(const json& j, const FieldSpec& field, const std::string& where);

json to_json(const Vector& v);
Vector vector_from_json(const json& j, const FieldSpec& field, const std::string& where);

json to_json(const Polynomial& p);

/// {"field": ..., "rows": [[...], ...]}
json to_json(const Matrix& m);
/// `field` overrides the spec stored in the document.
Matrix matrix_from_json(const json& j, const std::optional<FieldSpec>& field = std::nullopt,
                        const std::string& where = "matrix");

/// {"field", "d", "theta", "theta_star", "varphi", "phi"}
json to_json(const ParameterArray& pa);
ParameterArray parray_from_json(const json& j, const std::optional<FieldSpec>& field = std::nullopt,
                                const std::string& where = "parameter array");

json to_json(const ValidityReport& r);
json to_json(const AskeyWilsonCoefficients& c);
json to_json(const Fingerprint& f);
json to_json(const GSearchResult& g);
json to_json(const ConverseReport& c);

/// Verification report for a pair:
/// {"is_leonard_pair", "diameter", "orderings_found", "parameter_array",
///  "askey_wilson", "fingerprint", "failure_reason"}.
json verification_report(const Matrix& a, const Matrix& a_star);

}  // namespace lpair::io
