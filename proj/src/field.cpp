#include "toricgcp/field.hpp"

#include "toricgcp/errors.hpp"

namespace toricgcp {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Nonnegative residue; unsigned long is 64 bits on the supported platforms.
std::uint64_t reduce(const mpz_class& v, std::uint64_t p) {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p));
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 62)) {
    throw PreconditionError("field characteristic out of range: " + std::to_string(p));
  }
  const mpz_class z(static_cast<unsigned long>(p));
  if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) {
    throw PreconditionError("field characteristic is not prime: " + std::to_string(p));
  }
  return Field(p);
}

std::string Field::name() const {
  return is_rational() ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
}

FieldElem::FieldElem(Field f, long v) : field_(f) {
  if (f.is_rational()) {
    q_ = v;
  } else {
    r_ = reduce(mpz_class(v), f.characteristic());
  }
}

FieldElem::FieldElem(Field f, const mpz_class& v) : field_(f) {
  if (f.is_rational()) {
    q_ = v;
  } else {
    r_ = reduce(v, f.characteristic());
  }
}

FieldElem::FieldElem(Field f, const mpq_class& v) : field_(f) {
  if (f.is_rational()) {
    q_ = v;
    q_.canonicalize();
    return;
  }
  const std::uint64_t p = f.characteristic();
  const std::uint64_t den = reduce(v.get_den(), p);
  if (den == 0) throw PreconditionError("denominator vanishes in " + f.name());
  r_ = mulmod(reduce(v.get_num(), p), powmod(den, p - 2, p), p);
}

FieldElem FieldElem::parse(Field f, std::string_view text) {
  std::string s(text);
  mpq_class v;
  if (s.empty() || v.set_str(s, 10) != 0) {
    throw SchemaError("malformed coefficient: '" + s + "'");
  }
  if (v.get_den() == 0) throw SchemaError("zero denominator in coefficient: '" + s + "'");
  v.canonicalize();
  return FieldElem(f, v);
}

bool FieldElem::is_zero() const { return field_.is_rational() ? sgn(q_) == 0 : r_ == 0; }

bool FieldElem::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

void FieldElem::check_same(const FieldElem& o) const {
  if (field_ != o.field_) throw PreconditionError("incompatible rings");
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  FieldElem out(*this);
  if (field_.is_rational()) {
    out.q_ = 1 / q_;
    out.q_.canonicalize();
  } else {
    out.r_ = powmod(r_, field_.characteristic() - 2, field_.characteristic());
  }
  return out;
}

FieldElem FieldElem::pow(std::uint64_t e) const {
  FieldElem result(field_, 1L);
  FieldElem base(*this);
  while (e != 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string FieldElem::str() const {
  if (field_.is_rational()) return q_.get_str();
  return std::to_string(r_);
}

FieldElem FieldElem::operator-() const {
  FieldElem out(*this);
  if (field_.is_rational()) {
    out.q_ = -q_;
  } else if (r_ != 0) {
    out.r_ = field_.characteristic() - r_;
  }
  return out;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  check_same(o);
  if (field_.is_rational()) {
    q_ += o.q_;
  } else {
    const std::uint64_t p = field_.characteristic();
    r_ += o.r_;
    if (r_ >= p) r_ -= p;
  }
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  check_same(o);
  if (field_.is_rational()) {
    q_ -= o.q_;
  } else {
    const std::uint64_t p = field_.characteristic();
    r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + p - o.r_;
  }
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  check_same(o);
  if (field_.is_rational()) {
    q_ *= o.q_;
  } else {
    r_ = mulmod(r_, o.r_, field_.characteristic());
  }
  return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
  check_same(o);
  if (o.is_zero()) throw PreconditionError("division by zero");
  if (field_.is_rational()) {
    q_ /= o.q_;
  } else {
    r_ = mulmod(r_, o.inverse().r_, field_.characteristic());
  }
  return *this;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.field_ != b.field_) return false;
  return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::strong_ordering canonical_compare(const FieldElem& a, const FieldElem& b) {
  if (a.field_.is_rational()) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return a.r_ <=> b.r_;
}

}  // namespace toricgcp
