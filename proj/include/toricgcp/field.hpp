#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace toricgcp {

// The coefficient field: either Q or a prime field GF(p).
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field{}; }
  // Throws PreconditionError unless p is a prime below 2^62.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

// An exact element of Q or GF(p). Rationals are kept canonical by GMP
// (lowest terms, positive denominator); residues live in [0, p).
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(Field f, long v);
  FieldElem(Field f, const mpz_class& v);
  FieldElem(Field f, const mpq_class& v);

  // "a", "-a" or "a/b". Over GF(p) the value is reduced mod p.
  static FieldElem parse(Field f, std::string_view text);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const { return q_; }
  std::uint64_t residue() const { return r_; }

  FieldElem inverse() const;
  FieldElem pow(std::uint64_t e) const;

  // Decimal rendering: "a" / "a/b" over Q, the canonical residue over GF(p).
  std::string str() const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  friend bool operator==(const FieldElem& a, const FieldElem& b);

  // A total order used only to make outputs deterministic.
  friend std::strong_ordering canonical_compare(const FieldElem& a, const FieldElem& b);

 private:
  void check_same(const FieldElem& o) const;

  Field field_;
  mpq_class q_;
  std::uint64_t r_ = 0;
};

}  // namespace toricgcp
