#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "toricgcp/field.hpp"

namespace toricgcp {

using Exponent = std::vector<std::uint32_t>;
using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);
bool same_vars(const VarList& a, const VarList& b);

// Graded lexicographic order: total degree first, ties broken by the
// exponent of the earliest variable. Terms are stored largest first.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

struct Term {
  Exponent exp;
  FieldElem coeff;
};

// Sparse multivariate polynomial over an exact field. Canonical form: no
// zero coefficients and terms sorted by GrlexGreater, so structural equality
// is polynomial equality.
class MultiPoly {
 public:
  MultiPoly(Field field, VarList vars);

  static MultiPoly constant(Field field, VarList vars, const FieldElem& c);
  static MultiPoly variable(Field field, VarList vars, std::size_t index);
  static MultiPoly monomial(Field field, VarList vars, Exponent exp, const FieldElem& c);
  // Combines like terms and drops zeros; input order is irrelevant.
  static MultiPoly from_terms(Field field, VarList vars, std::vector<Term> terms);

  Field field() const { return field_; }
  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Term& leading_term() const;

  int total_degree() const;                       // -1 for the zero polynomial
  int degree(std::size_t var) const;              // -1 for zero
  int min_degree(std::size_t var) const;          // -1 for zero
  int degree_in(std::span<const std::size_t> vars) const;
  bool is_homogeneous_in(std::span<const std::size_t> vars) const;
  std::vector<std::size_t> used_vars() const;

  // Coefficient of var^k, as a polynomial over the same variables.
  MultiPoly coefficient(std::size_t var, std::uint32_t k) const;
  MultiPoly substitute(std::size_t var, const FieldElem& value) const;
  MultiPoly derivative(std::size_t var) const;
  FieldElem evaluate(std::span<const FieldElem> point) const;

  // Re-express over another variable list (matched by name). Throws when a
  // used variable is missing from the target.
  MultiPoly embed(const VarList& target) const;

  MultiPoly scaled(const FieldElem& c) const;
  MultiPoly pow(unsigned e) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  std::string str() const;

 private:
  void check_ring(const MultiPoly& o) const;
  MultiPoly add_scaled(const MultiPoly& o, bool negate) const;

  Field field_;
  VarList vars_;
  std::vector<Term> terms_;
};

// q with a = q*b. Throws NotDivisible if the remainder is nonzero and
// PreconditionError when b = 0.
MultiPoly divexact(const MultiPoly& a, const MultiPoly& b);

// Scale so the leading term has coefficient 1; returns the removed scalar.
struct Normalized {
  MultiPoly poly;
  FieldElem scalar;  // original = scalar * poly
};
Normalized make_monic(const MultiPoly& p);
// Over Q: integer coefficients with gcd 1 and positive leading coefficient.
// Over GF(p): same as make_monic.
Normalized make_primitive(const MultiPoly& p);

}  // namespace toricgcp

namespace toricgcp {

// Infix parser: integers and a/b literals, the given variable names, + - *
// ^ (nonnegative integer exponents) and parentheses. Throws SchemaError.
MultiPoly parse_polynomial(Field field, const VarList& vars, std::string_view text);

}  // namespace toricgcp
