#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricgcp/geometry.hpp"
#include "toricgcp/poly.hpp"

namespace toricgcp::io {

using json = nlohmann::json;

// Field text: "Q", "gfp:P" (command line) or the JSON forms "Q" / {"GFp": P}.
Field parse_field(const std::string& text);
Field field_from_json(const json& j);
json field_to_json(const Field& f);

// {"vars": [...], "terms": [{"exp": [...], "coeff": "a/b"}]}; "expr" may
// replace "terms" with an infix expression over the same vars.
json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(Field field, const json& j);

json point_to_json(const Point& p);
json support_to_json(const Support& s);
json tuple_to_json(const SupportTuple& t);
Support support_from_json(const json& j, std::size_t n);
SupportTuple tuple_from_json(const json& j, std::size_t n);

json elems_to_json(const std::vector<FieldElem>& v);

// A problem file. The ring is the first n variables of the first polynomial
// (the torus variables) followed by every other name in order of first
// appearance, unless "vars" is given explicitly.
struct Problem {
  std::size_t n = 0;
  Field field;
  VarList vars;
  std::vector<MultiPoly> polys;
  std::optional<SupportTuple> supports;
  std::optional<json> A;  // "simplex", "cube", "auto" or a point list
  std::optional<SupportTuple> fill;
  std::uint64_t seed = 0;
};

// Throws SchemaError on any malformed field, and when a declared support
// misses a monomial of its polynomial.
Problem parse_problem(const json& j, const std::optional<Field>& field_override = std::nullopt);

}  // namespace toricgcp::io
