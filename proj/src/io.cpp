#include "toricgcp/io.hpp"

#include <algorithm>
#include <set>

#include "toricgcp/errors.hpp"
#include "toricgcp/resultant.hpp"

namespace toricgcp::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw SchemaError(what); }

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::uint64_t as_u64(const json& j, const std::string& where) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    bad(where + ": expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

Field checked_prime(std::uint64_t p) {
  try {
    return Field::prime(p);
  } catch (const PreconditionError& e) {
    bad(e.what());
  }
}

std::vector<std::string> names_of(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": \"vars\" must be an array of names");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) bad(where + ": variable names must be strings");
    out.push_back(v.get<std::string>());
  }
  std::set<std::string> seen(out.begin(), out.end());
  if (seen.size() != out.size()) bad(where + ": repeated variable name");
  return out;
}

FieldElem coeff_from_json(Field field, const json& c, const std::string& where) {
  if (c.is_number_integer()) return FieldElem(field, mpz_class(c.dump()));
  if (!c.is_string()) bad(where + ": coefficients are decimal strings");
  try {
    return FieldElem::parse(field, c.get<std::string>());
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    bad(where + ": " + e.what());
  }
}

}  // namespace

Field parse_field(const std::string& text) {
  if (text == "Q" || text == "q") return Field::rationals();
  const std::string prefix = "gfp:";
  if (text.rfind(prefix, 0) == 0 || text.rfind("GFp:", 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      bad("field: bad prime in '" + text + "'");
    }
    if (digits.size() > 19) bad("field: prime too large");
    return checked_prime(std::stoull(digits));
  }
  bad("field: expected Q or gfp:P, got '" + text + "'");
}

Field field_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Q") return Field::rationals();
    bad("field: expected \"Q\" or {\"GFp\": p}");
  }
  return checked_prime(as_u64(member(j, "GFp", "field"), "field.GFp"));
}

json field_to_json(const Field& f) {
  if (f.is_rational()) return "Q";
  return json{{"GFp", f.characteristic()}};
}

json poly_to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back({{"exp", t.exp}, {"coeff", t.coeff.str()}});
  return json{{"vars", *p.vars()}, {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(Field field, const json& j) {
  const std::string where = "polynomial";
  const VarList vars = make_vars(names_of(member(j, "vars", where), where));
  if (j.contains("expr")) {
    if (!j.at("expr").is_string()) bad(where + ": \"expr\" must be a string");
    return parse_polynomial(field, vars, j.at("expr").get<std::string>());
  }
  const json& terms = member(j, "terms", where);
  if (!terms.is_array()) bad(where + ": \"terms\" must be an array");
  std::vector<Term> out;
  for (const auto& t : terms) {
    const json& e = member(t, "exp", where + " term");
    if (!e.is_array() || e.size() != vars->size()) bad(where + ": exponent length differs from vars");
    Exponent exp;
    for (const auto& x : e) {
      const auto v = as_u64(x, where + " exponent");
      if (v > 1u << 20) bad(where + ": exponent too large");
      exp.push_back(static_cast<std::uint32_t>(v));
    }
    out.push_back({std::move(exp), coeff_from_json(field, member(t, "coeff", where + " term"), where)});
  }
  return MultiPoly::from_terms(field, vars, std::move(out));
}

json point_to_json(const Point& p) { return json(p); }

json support_to_json(const Support& s) {
  json out = json::array();
  for (const auto& p : s.points()) out.push_back(point_to_json(p));
  return out;
}

json tuple_to_json(const SupportTuple& t) {
  json out = json::array();
  for (const auto& s : t) out.push_back(support_to_json(s));
  return out;
}

Support support_from_json(const json& j, std::size_t n) {
  if (!j.is_array()) bad("support: expected an array of points");
  std::vector<Point> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != n) bad("support: every point needs " + std::to_string(n) + " coordinates");
    Point q;
    for (const auto& c : p) {
      if (!c.is_number_integer()) bad("support: coordinates must be integers");
      const auto v = c.get<std::int64_t>();
      if (v < -(1 << 20) || v > (1 << 20)) bad("support: coordinate out of range");
      q.push_back(v);
    }
    pts.push_back(std::move(q));
  }
  return Support(n, std::move(pts));
}

SupportTuple tuple_from_json(const json& j, std::size_t n) {
  if (!j.is_array()) bad("supports: expected an array of supports");
  SupportTuple out;
  for (const auto& s : j) out.push_back(support_from_json(s, n));
  return out;
}

json elems_to_json(const std::vector<FieldElem>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Problem parse_problem(const json& j, const std::optional<Field>& field_override) {
  if (!j.is_object()) bad("problem: expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    static const std::set<std::string> known{"n", "field", "vars", "polynomials", "supports", "A", "fill", "seed"};
    if (!known.count(key)) bad("problem: unknown field \"" + key + "\"");
  }
  Problem pb;
  pb.n = as_u64(member(j, "n", "problem"), "n");
  if (pb.n == 0 || pb.n > kMaxHullDim) bad("n must be between 1 and " + std::to_string(kMaxHullDim));
  pb.field = field_override ? *field_override : (j.contains("field") ? field_from_json(j.at("field")) : Field::rationals());
  if (j.contains("seed")) pb.seed = as_u64(j.at("seed"), "seed");

  const json& polys = member(j, "polynomials", "problem");
  if (!polys.is_array() || polys.empty()) bad("polynomials: expected a nonempty array");
  std::vector<MultiPoly> raw;
  for (const auto& p : polys) raw.push_back(poly_from_json(pb.field, p));

  std::vector<std::string> names;
  if (j.contains("vars")) {
    names = names_of(j.at("vars"), "problem");
  } else {
    for (const auto& p : raw) {
      for (const auto& v : *p.vars()) {
        if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
      }
    }
    // The torus variables come from the first polynomial.
    const auto& first = *raw.front().vars();
    if (first.size() < pb.n) bad("the first polynomial must list the " + std::to_string(pb.n) + " torus variables first");
    std::vector<std::string> ordered(first.begin(), first.begin() + static_cast<long>(pb.n));
    for (const auto& v : names) {
      if (std::find(ordered.begin(), ordered.end(), v) == ordered.end()) ordered.push_back(v);
    }
    names = std::move(ordered);
  }
  if (names.size() < pb.n) bad("fewer variables than n");
  pb.vars = make_vars(names);
  for (const auto& p : raw) {
    try {
      pb.polys.push_back(p.embed(pb.vars));
    } catch (const PreconditionError& e) {
      bad(std::string("polynomials: ") + e.what());
    }
  }

  if (j.contains("supports")) {
    pb.supports = tuple_from_json(j.at("supports"), pb.n);
    if (pb.supports->size() != pb.polys.size()) bad("supports: one support per polynomial");
    for (std::size_t i = 0; i < pb.polys.size(); ++i) {
      if (!support_of(pb.polys[i], pb.n).is_subset_of((*pb.supports)[i])) {
        bad("supports: polynomial " + std::to_string(i) + " has a monomial outside its declared support");
      }
    }
  }
  if (j.contains("A")) {
    const json& a = j.at("A");
    if (a.is_string()) {
      const auto s = a.get<std::string>();
      if (s != "simplex" && s != "cube" && s != "auto") bad("A: expected simplex, cube, auto or a point list");
    } else {
      support_from_json(a, pb.n);
    }
    pb.A = a;
  }
  if (j.contains("fill")) {
    pb.fill = tuple_from_json(j.at("fill"), pb.n);
    if (pb.fill->size() != pb.n) bad("fill: expected n supports");
  }
  return pb;
}

}  // namespace toricgcp::io
