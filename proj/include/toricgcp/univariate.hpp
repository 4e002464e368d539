#pragma once

#include <cstdint>
#include <vector>

#include "toricgcp/field.hpp"
#include "toricgcp/poly.hpp"

namespace toricgcp {

// Dense univariate polynomial, coefficients from degree 0 upward, no
// trailing zeros.
class UniPoly {
 public:
  explicit UniPoly(Field field) : field_(field) {}
  UniPoly(Field field, std::vector<FieldElem> coeffs);

  static UniPoly constant(Field field, const FieldElem& c);
  static UniPoly x_minus(const FieldElem& r);  // t - r
  static UniPoly linear(const FieldElem& a, const FieldElem& b);  // a + b t

  Field field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  FieldElem coeff(std::size_t i) const;
  const FieldElem& lead() const { return c_.back(); }

  FieldElem operator()(const FieldElem& x) const;
  UniPoly derivative() const;
  UniPoly monic() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly scaled(const FieldElem& s) const;

  friend bool operator==(const UniPoly& a, const UniPoly& b);

 private:
  void trim();
  Field field_;
  std::vector<FieldElem> c_;
};

struct UniDivMod {
  UniPoly quot;
  UniPoly rem;
};
UniDivMod divmod(const UniPoly& a, const UniPoly& b);
UniPoly gcd(UniPoly a, UniPoly b);  // monic, gcd(0,0) = 0
UniPoly powmod(const UniPoly& base, const mpz_class& e, const UniPoly& mod);

struct RootMultiplicity {
  FieldElem root;
  int multiplicity;
};

struct UniRoots {
  std::vector<RootMultiplicity> roots;  // sorted canonically
  UniPoly remainder;                    // monic, no roots in the field
  FieldElem unit;                       // p = unit * prod (t-r)^m * remainder
};

// All roots of p in its coefficient field. Over Q: exact rational roots by
// modular root finding, Hensel lifting and rational reconstruction. Over
// GF(p): gcd with t^p - t followed by equal-degree splitting.
UniRoots roots_in_field(const UniPoly& p);

// Distinct roots of a nonzero polynomial over GF(p).
std::vector<FieldElem> distinct_roots_mod_p(const UniPoly& p);

struct UnivariateRoots {
  std::vector<RootMultiplicity> roots;
  MultiPoly remainder;  // monic, in the same ring as the input
  FieldElem unit;
};

// Same as roots_in_field for a MultiPoly that uses at most one variable.
UnivariateRoots univ_roots(const MultiPoly& p);

UniPoly to_unipoly(const MultiPoly& p, std::size_t var);
MultiPoly from_unipoly(const UniPoly& u, const VarList& vars, std::size_t var);

}  // namespace toricgcp
