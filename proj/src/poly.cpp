#include "toricgcp/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <cctype>

#include "toricgcp/errors.hpp"

namespace toricgcp {

namespace {

std::uint64_t exp_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

// Sorts, merges like terms and drops zero coefficients.
void canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return GrlexGreater{}(a.exp, b.exp); });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  terms = std::move(out);
}

}  // namespace

VarList make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_vars(const VarList& a, const VarList& b) { return a == b || *a == *b; }

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
  const auto da = exp_degree(a);
  const auto db = exp_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly::MultiPoly(Field field, VarList vars) : field_(field), vars_(std::move(vars)) {
  if (!vars_) vars_ = make_vars({});
}

MultiPoly MultiPoly::constant(Field field, VarList vars, const FieldElem& c) {
  MultiPoly p(field, std::move(vars));
  if (!c.is_zero()) p.terms_.push_back({Exponent(p.nvars(), 0), c});
  return p;
}

MultiPoly MultiPoly::variable(Field field, VarList vars, std::size_t index) {
  MultiPoly p(field, std::move(vars));
  if (index >= p.nvars()) throw PreconditionError("variable index out of range");
  Exponent e(p.nvars(), 0);
  e[index] = 1;
  p.terms_.push_back({std::move(e), FieldElem(field, 1L)});
  return p;
}

MultiPoly MultiPoly::monomial(Field field, VarList vars, Exponent exp, const FieldElem& c) {
  MultiPoly p(field, std::move(vars));
  if (exp.size() != p.nvars()) throw PreconditionError("exponent length does not match variables");
  if (!c.is_zero()) p.terms_.push_back({std::move(exp), c});
  return p;
}

MultiPoly MultiPoly::from_terms(Field field, VarList vars, std::vector<Term> terms) {
  MultiPoly p(field, std::move(vars));
  for (const auto& t : terms) {
    if (t.exp.size() != p.nvars()) throw PreconditionError("exponent length does not match variables");
    if (t.coeff.field() != field) throw PreconditionError("incompatible rings");
  }
  canonicalize(terms);
  p.terms_ = std::move(terms);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && exp_degree(terms_.front().exp) == 0);
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw PreconditionError("leading term of the zero polynomial");
  return terms_.front();
}

int MultiPoly::total_degree() const {
  return terms_.empty() ? -1 : static_cast<int>(exp_degree(terms_.front().exp));
}

int MultiPoly::degree(std::size_t var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exp[var]));
  return d;
}

int MultiPoly::min_degree(std::size_t var) const {
  if (terms_.empty()) return -1;
  int d = static_cast<int>(terms_.front().exp[var]);
  for (const auto& t : terms_) d = std::min(d, static_cast<int>(t.exp[var]));
  return d;
}

int MultiPoly::degree_in(std::span<const std::size_t> vars) const {
  int d = -1;
  for (const auto& t : terms_) {
    int s = 0;
    for (auto v : vars) s += static_cast<int>(t.exp[v]);
    d = std::max(d, s);
  }
  return d;
}

bool MultiPoly::is_homogeneous_in(std::span<const std::size_t> vars) const {
  int d = -1;
  for (const auto& t : terms_) {
    int s = 0;
    for (auto v : vars) s += static_cast<int>(t.exp[v]);
    if (d >= 0 && s != d) return false;
    d = s;
  }
  return true;
}

std::vector<std::size_t> MultiPoly::used_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < nvars(); ++v) {
    if (std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.exp[v] != 0; })) {
      out.push_back(v);
    }
  }
  return out;
}

MultiPoly MultiPoly::coefficient(std::size_t var, std::uint32_t k) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exp[var] == k) {
      Term c = t;
      c.exp[var] = 0;
      out.push_back(std::move(c));
    }
  }
  return from_terms(field_, vars_, std::move(out));
}

MultiPoly MultiPoly::substitute(std::size_t var, const FieldElem& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term c = t;
    c.coeff *= value.pow(t.exp[var]);
    c.exp[var] = 0;
    out.push_back(std::move(c));
  }
  return from_terms(field_, vars_, std::move(out));
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exp[var] == 0) continue;
    Term c = t;
    c.coeff *= FieldElem(field_, static_cast<long>(t.exp[var]));
    c.exp[var] -= 1;
    out.push_back(std::move(c));
  }
  return from_terms(field_, vars_, std::move(out));
}

FieldElem MultiPoly::evaluate(std::span<const FieldElem> point) const {
  if (point.size() != nvars()) throw PreconditionError("evaluation point has wrong length");
  FieldElem acc(field_, 0L);
  for (const auto& t : terms_) {
    FieldElem m = t.coeff;
    for (std::size_t v = 0; v < nvars(); ++v) {
      if (t.exp[v] != 0) m *= point[v].pow(t.exp[v]);
    }
    acc += m;
  }
  return acc;
}

MultiPoly MultiPoly::embed(const VarList& target) const {
  if (same_vars(vars_, target)) {
    MultiPoly p = *this;
    p.vars_ = target;
    return p;
  }
  std::vector<std::size_t> where(nvars(), target->size());
  for (std::size_t v = 0; v < nvars(); ++v) {
    auto it = std::find(target->begin(), target->end(), (*vars_)[v]);
    if (it != target->end()) where[v] = static_cast<std::size_t>(it - target->begin());
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponent e(target->size(), 0);
    for (std::size_t v = 0; v < nvars(); ++v) {
      if (t.exp[v] == 0) continue;
      if (where[v] == target->size()) {
        throw PreconditionError("variable '" + (*vars_)[v] + "' missing from target ring");
      }
      e[where[v]] = t.exp[v];
    }
    out.push_back({std::move(e), t.coeff});
  }
  return from_terms(field_, target, std::move(out));
}

MultiPoly MultiPoly::scaled(const FieldElem& c) const {
  if (c.is_zero()) return MultiPoly(field_, vars_);
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(field_, vars_, FieldElem(field_, 1L));
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

void MultiPoly::check_ring(const MultiPoly& o) const {
  if (field_ != o.field_ || !same_vars(vars_, o.vars_)) {
    throw PreconditionError("incompatible rings");
  }
}

MultiPoly MultiPoly::add_scaled(const MultiPoly& o, bool negate) const {
  check_ring(o);
  MultiPoly out(field_, vars_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  const GrlexGreater gt;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && gt(terms_[i].exp, o.terms_[j].exp))) {
      out.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || gt(o.terms_[j].exp, terms_[i].exp)) {
      Term t = o.terms_[j++];
      if (negate) t.coeff = -t.coeff;
      out.terms_.push_back(std::move(t));
    } else {
      FieldElem c = negate ? terms_[i].coeff - o.terms_[j].coeff : terms_[i].coeff + o.terms_[j].coeff;
      if (!c.is_zero()) out.terms_.push_back({terms_[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  *this = add_scaled(o, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  *this = add_scaled(o, true);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_ring(b);
  MultiPoly out(a.field_, a.vars_);
  if (a.is_zero() || b.is_zero()) return out;
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  const std::size_t n = a.nvars();
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Exponent e(n);
      for (std::size_t v = 0; v < n; ++v) e[v] = ta.exp[v] + tb.exp[v];
      prod.push_back({std::move(e), ta.coeff * tb.coeff});
    }
  }
  canonicalize(prod);
  out.terms_ = std::move(prod);
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.field_ != b.field_ || !same_vars(a.vars_, b.vars_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.coeff.str();
    bool neg = field_.is_rational() && sgn(t.coeff.rational()) < 0;
    if (neg) c = c.substr(1);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const bool unit = c == "1";
    bool any_var = false;
    std::ostringstream mono;
    for (std::size_t v = 0; v < nvars(); ++v) {
      if (t.exp[v] == 0) continue;
      if (any_var) mono << "*";
      mono << (*vars_)[v];
      if (t.exp[v] > 1) mono << "^" << t.exp[v];
      any_var = true;
    }
    if (!any_var) {
      os << c;
    } else if (unit) {
      os << mono.str();
    } else {
      os << c << "*" << mono.str();
    }
  }
  return os.str();
}

MultiPoly divexact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (a.field() != b.field() || !same_vars(a.vars(), b.vars())) {
    throw PreconditionError("incompatible rings");
  }
  const std::size_t n = a.nvars();
  if (b.size() == 1) {
    // Monomial divisor: termwise.
    const Term& lb = b.leading_term();
    const FieldElem inv = lb.coeff.inverse();
    std::vector<Term> q;
    q.reserve(a.size());
    for (const auto& t : a.terms()) {
      Exponent e(n);
      for (std::size_t v = 0; v < n; ++v) {
        if (t.exp[v] < lb.exp[v]) throw NotDivisible();
        e[v] = t.exp[v] - lb.exp[v];
      }
      q.push_back({std::move(e), t.coeff * inv});
    }
    return MultiPoly::from_terms(a.field(), a.vars(), std::move(q));
  }
  std::map<Exponent, FieldElem, GrlexGreater> rem;
  for (const auto& t : a.terms()) rem.emplace(t.exp, t.coeff);
  const Term& lb = b.leading_term();
  const FieldElem inv = lb.coeff.inverse();
  std::vector<Term> q;
  while (!rem.empty()) {
    auto it = rem.begin();
    Exponent e(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (it->first[v] < lb.exp[v]) throw NotDivisible();
      e[v] = it->first[v] - lb.exp[v];
    }
    const FieldElem c = it->second * inv;
    for (const auto& tb : b.terms()) {
      Exponent m(n);
      for (std::size_t v = 0; v < n; ++v) m[v] = e[v] + tb.exp[v];
      const FieldElem delta = c * tb.coeff;
      auto [pos, inserted] = rem.try_emplace(std::move(m), -delta);
      if (!inserted) {
        pos->second -= delta;
        if (pos->second.is_zero()) rem.erase(pos);
      }
    }
    q.push_back({std::move(e), c});
  }
  return MultiPoly::from_terms(a.field(), a.vars(), std::move(q));
}

Normalized make_monic(const MultiPoly& p) {
  if (p.is_zero()) return {p, FieldElem(p.field(), 1L)};
  const FieldElem lc = p.leading_term().coeff;
  return {p.scaled(lc.inverse()), lc};
}

Normalized make_primitive(const MultiPoly& p) {
  if (!p.field().is_rational() || p.is_zero()) return make_monic(p);
  mpz_class den = 1;
  mpz_class num = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.rational().get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.rational().get_num_mpz_t());
  }
  mpq_class scale(den, num);  // multiply coefficients by den/num
  scale.canonicalize();
  if (sgn(p.leading_term().coeff.rational()) < 0) scale = -scale;
  const FieldElem s(p.field(), scale);
  return {p.scaled(s), s.inverse()};
}

}  // namespace toricgcp

namespace toricgcp {

namespace {

class Parser {
 public:
  Parser(Field f, const VarList& vars, std::string_view s) : f_(f), vars_(vars), s_(s) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SchemaError("cannot parse polynomial '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  MultiPoly expr() {
    MultiPoly acc(f_, vars_);
    bool neg = eat('-');
    if (!neg) eat('+');
    acc = neg ? -term() : term();
    while (true) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }
  MultiPoly term() {
    MultiPoly acc = power();
    while (eat('*')) acc = acc * power();
    return acc;
  }
  MultiPoly power() {
    MultiPoly base = atom();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }
  MultiPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      MultiPoly p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    if (eat('-')) return -atom();
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      return MultiPoly::constant(f_, vars_, FieldElem::parse(f_, s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_->size(); ++i) {
        if ((*vars_)[i] == name) return MultiPoly::variable(f_, vars_, i);
      }
      fail("unknown variable " + name);
    }
    fail("unexpected character");
  }

  Field f_;
  const VarList& vars_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_polynomial(Field field, const VarList& vars, std::string_view text) {
  return Parser(field, vars, text).parse();
}

}  // namespace toricgcp
