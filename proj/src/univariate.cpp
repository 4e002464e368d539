#include "toricgcp/univariate.hpp"

#include <algorithm>
#include <random>

#include "toricgcp/errors.hpp"

namespace toricgcp {

UniPoly::UniPoly(Field field, std::vector<FieldElem> coeffs) : field_(field), c_(std::move(coeffs)) {
  trim();
}

UniPoly UniPoly::constant(Field field, const FieldElem& c) { return UniPoly(field, {c}); }

UniPoly UniPoly::x_minus(const FieldElem& r) {
  return UniPoly(r.field(), {-r, FieldElem(r.field(), 1L)});
}

UniPoly UniPoly::linear(const FieldElem& a, const FieldElem& b) { return UniPoly(a.field(), {a, b}); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElem UniPoly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : FieldElem(field_, 0L);
}

FieldElem UniPoly::operator()(const FieldElem& x) const {
  FieldElem acc(field_, 0L);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<FieldElem> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * FieldElem(field_, static_cast<long>(i)));
  return UniPoly(field_, std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inverse());
}

UniPoly UniPoly::scaled(const FieldElem& s) const {
  std::vector<FieldElem> d = c_;
  for (auto& x : d) x *= s;
  return UniPoly(field_, std::move(d));
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), FieldElem(field_, 0L));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), FieldElem(field_, 0L));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly(a.field_);
  std::vector<FieldElem> out(a.c_.size() + b.c_.size() - 1, FieldElem(a.field_, 0L));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(a.field_, std::move(out));
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  return a.field_ == b.field_ && a.c_ == b.c_;
}

UniDivMod divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw PreconditionError("division by the zero polynomial");
  const Field f = a.field();
  if (a.degree() < b.degree()) return {UniPoly(f), a};
  std::vector<FieldElem> r = a.coeffs();
  std::vector<FieldElem> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), FieldElem(f, 0L));
  const FieldElem inv = b.lead().inverse();
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = q.size(); k-- > 0;) {
    const FieldElem c = r[k + db] * inv;
    q[k] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= c * b.coeffs()[j];
  }
  return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).rem;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly powmod(const UniPoly& base, const mpz_class& e, const UniPoly& mod) {
  UniPoly result = divmod(UniPoly::constant(base.field(), FieldElem(base.field(), 1L)), mod).rem;
  UniPoly b = divmod(base, mod).rem;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = divmod(result * result, mod).rem;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = divmod(result * b, mod).rem;
  }
  return result;
}

namespace {

void sort_roots(std::vector<FieldElem>& roots) {
  std::sort(roots.begin(), roots.end(),
            [](const FieldElem& a, const FieldElem& b) { return canonical_compare(a, b) < 0; });
}

// h is monic and a product of distinct linear factors with nonzero roots.
void equal_degree_split(const UniPoly& h, std::mt19937_64& rng, std::vector<FieldElem>& out) {
  const Field f = h.field();
  if (h.degree() <= 0) return;
  if (h.degree() == 1) {
    out.push_back(-h.coeff(0) / h.lead());
    return;
  }
  const std::uint64_t p = f.characteristic();
  const mpz_class half = (mpz_class(static_cast<unsigned long>(p)) - 1) / 2;
  for (;;) {
    const FieldElem a(f, static_cast<long>(rng() % p));
    UniPoly w = powmod(UniPoly::linear(a, FieldElem(f, 1L)), half, h);
    w -= UniPoly::constant(f, FieldElem(f, 1L));
    UniPoly g = gcd(h, w);
    if (g.degree() > 0 && g.degree() < h.degree()) {
      equal_degree_split(g, rng, out);
      equal_degree_split(divmod(h, g).quot.monic(), rng, out);
      return;
    }
  }
}

mpz_class eval_int(const std::vector<mpz_class>& c, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = (acc * x + *it) % m;
  }
  if (acc < 0) acc += m;
  return acc;
}

// Rational a/b with a = r*b mod m and |a|, |b| <= sqrt(m/2), if one exists.
bool rational_reconstruct(const mpz_class& r, const mpz_class& m, mpq_class& out) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = r;
  mpz_class s0 = 0, s1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return false;
  out = mpq_class(r1, s1);
  out.canonicalize();
  return true;
}

// Distinct rational roots of a squarefree primitive integer polynomial with
// nonzero constant term.
std::vector<mpq_class> rational_roots(const std::vector<mpz_class>& g) {
  std::vector<mpq_class> out;
  const int deg = static_cast<int>(g.size()) - 1;
  if (deg <= 0) return out;
  if (deg == 1) {
    mpq_class r(-g[0], g[1]);
    r.canonicalize();
    out.push_back(r);
    return out;
  }
  const mpz_class bound = std::max(abs(g.front()), abs(g.back()));
  mpz_class prime = 1009;
  for (;;) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    if (g.back() % prime == 0) continue;
    const Field fp = Field::prime(prime.get_ui());
    std::vector<FieldElem> gc;
    for (const auto& c : g) gc.emplace_back(fp, c);
    UniPoly gp(fp, gc);
    if (gcd(gp, gp.derivative()).degree() != 0) continue;
    const std::vector<FieldElem> mod_roots = distinct_roots_mod_p(gp);
    std::vector<mpz_class> dg;
    for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(g[i] * static_cast<unsigned long>(i));
    const mpz_class target = 2 * bound * bound + 1;
    for (const auto& r0 : mod_roots) {
      mpz_class m = prime;
      mpz_class r(static_cast<unsigned long>(r0.residue()));
      while (m <= target) {
        m *= m;
        const mpz_class num = eval_int(g, r, m);
        mpz_class den = eval_int(dg, r, m);
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) break;
        r = (r - num * inv) % m;
        if (r < 0) r += m;
      }
      mpq_class cand;
      if (!rational_reconstruct(r, m, cand)) continue;
      // Exact check: b^deg * g(a/b) = sum g_i a^i b^(deg-i).
      mpz_class acc = g.back();
      mpz_class bpow = 1;
      for (int i = deg - 1; i >= 0; --i) {
        bpow *= cand.get_den();
        acc = acc * cand.get_num() + g[static_cast<std::size_t>(i)] * bpow;
      }
      if (acc == 0) out.push_back(cand);
    }
    return out;
  }
}

}  // namespace

std::vector<FieldElem> distinct_roots_mod_p(const UniPoly& poly) {
  const Field f = poly.field();
  if (f.is_rational()) throw PreconditionError("distinct_roots_mod_p needs a prime field");
  if (poly.is_zero()) throw PreconditionError("roots of the zero polynomial");
  const std::uint64_t p = f.characteristic();
  std::vector<FieldElem> out;
  if (poly.degree() == 0) return out;
  if (p <= 1024) {
    for (std::uint64_t x = 0; x < p; ++x) {
      const FieldElem v(f, static_cast<long>(x));
      if (poly(v).is_zero()) out.push_back(v);
    }
    return out;
  }
  const UniPoly monic = poly.monic();
  const UniPoly t = UniPoly::linear(FieldElem(f, 0L), FieldElem(f, 1L));
  UniPoly xp = powmod(t, mpz_class(static_cast<unsigned long>(p)), monic);
  UniPoly h = gcd(monic, xp - t);
  if (!h.is_zero() && h.coeff(0).is_zero()) {
    out.emplace_back(f, 0L);
    h = divmod(h, t).quot;
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  equal_degree_split(h.monic(), rng, out);
  sort_roots(out);
  return out;
}

UniRoots roots_in_field(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("roots of the zero polynomial");
  const Field f = p.field();
  std::vector<FieldElem> distinct;
  if (f.is_rational()) {
    UniPoly g = p;
    const UniPoly t = UniPoly::linear(FieldElem(f, 0L), FieldElem(f, 1L));
    if (g.coeff(0).is_zero()) {
      distinct.emplace_back(f, 0L);
      while (g.coeff(0).is_zero()) g = divmod(g, t).quot;
    }
    if (g.degree() > 0) {
      UniPoly sqf = divmod(g, gcd(g, g.derivative())).quot;
      mpz_class den = 1;
      for (const auto& c : sqf.coeffs()) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
      }
      std::vector<mpz_class> ints;
      mpz_class content = 0;
      for (const auto& c : sqf.coeffs()) {
        mpq_class v = c.rational() * den;
        ints.push_back(v.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints.back().get_mpz_t());
      }
      for (auto& c : ints) c /= content;
      for (const auto& r : rational_roots(ints)) distinct.emplace_back(f, r);
    }
  } else {
    distinct = distinct_roots_mod_p(p);
  }
  sort_roots(distinct);

  UniRoots out{{}, p, p.lead()};
  for (const auto& r : distinct) {
    const UniPoly lin = UniPoly::x_minus(r);
    int mult = 0;
    for (;;) {
      UniDivMod dm = divmod(out.remainder, lin);
      if (!dm.rem.is_zero()) break;
      out.remainder = std::move(dm.quot);
      ++mult;
    }
    if (mult > 0) out.roots.push_back({r, mult});
  }
  out.remainder = out.remainder.monic();
  return out;
}

UniPoly to_unipoly(const MultiPoly& p, std::size_t var) {
  std::vector<FieldElem> c(static_cast<std::size_t>(std::max(p.degree(var), 0)) + 1,
                           FieldElem(p.field(), 0L));
  for (const auto& t : p.terms()) {
    for (std::size_t v = 0; v < p.nvars(); ++v) {
      if (v != var && t.exp[v] != 0) throw PreconditionError("polynomial is not univariate");
    }
    c[t.exp[var]] += t.coeff;
  }
  return UniPoly(p.field(), std::move(c));
}

MultiPoly from_unipoly(const UniPoly& u, const VarList& vars, std::size_t var) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
    Exponent e(vars->size(), 0);
    e[var] = static_cast<std::uint32_t>(i);
    terms.push_back({std::move(e), u.coeffs()[i]});
  }
  return MultiPoly::from_terms(u.field(), vars, std::move(terms));
}

UnivariateRoots univ_roots(const MultiPoly& p) {
  if (p.is_zero()) throw PreconditionError("roots of the zero polynomial");
  const auto used = p.used_vars();
  if (used.size() > 1) throw PreconditionError("polynomial is not univariate");
  const std::size_t var = used.empty() ? 0 : used.front();
  if (p.nvars() == 0) {
    return {{}, p.scaled(p.leading_term().coeff.inverse()), p.leading_term().coeff};
  }
  UniRoots r = roots_in_field(to_unipoly(p, var));
  return {std::move(r.roots), from_unipoly(r.remainder, p.vars(), var), r.unit};
}

}  // namespace toricgcp
