#include "toricgcp/rootfind.hpp"

#include <algorithm>
#include <random>

#include "toricgcp/errors.hpp"
#include "toricgcp/fill.hpp"
#include "toricgcp/subdivision.hpp"
#include "toricgcp/univariate.hpp"

namespace toricgcp {

namespace {

UniPoly restrict_to_line(const MultiPoly& f, const std::vector<FieldElem>& p, const std::vector<FieldElem>& q) {
  const Field field = f.field();
  const std::size_t m = f.nvars();
  std::vector<std::vector<UniPoly>> pw(m);
  for (std::size_t j = 0; j < m; ++j) {
    const UniPoly line = UniPoly::linear(p[j], q[j]);
    pw[j].push_back(UniPoly::constant(field, FieldElem(field, 1L)));
    const int d = std::max(f.degree(j), 0);
    for (int e = 1; e <= d; ++e) pw[j].push_back(pw[j].back() * line);
  }
  UniPoly out(field);
  for (const auto& t : f.terms()) {
    UniPoly acc = UniPoly::constant(field, t.coeff);
    for (std::size_t j = 0; j < m; ++j) {
      if (t.exp[j] != 0) acc = acc * pw[j][t.exp[j]];
    }
    out += acc;
  }
  return out;
}

MultiPoly directional(const MultiPoly& h, const std::vector<FieldElem>& q) {
  MultiPoly out(h.field(), h.vars());
  for (std::size_t j = 0; j < h.nvars(); ++j) {
    if (!q[j].is_zero()) out += h.derivative(j).scaled(q[j]);
  }
  return out;
}

MultiPoly linear_form(const Field& field, const VarList& vars, const std::vector<FieldElem>& c) {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < c.size(); ++j) {
    Exponent e(vars->size(), 0);
    e[j] = 1;
    terms.push_back({std::move(e), c[j]});
  }
  return MultiPoly::from_terms(field, vars, std::move(terms));
}

FieldElem draw(const Field& field, std::mt19937_64& rng) {
  if (field.is_rational()) {
    std::uniform_int_distribution<long> d(-60, 60);
    return FieldElem(field, d(rng));
  }
  std::uniform_int_distribution<std::uint64_t> d(0, field.characteristic() - 1);
  return FieldElem(field, mpz_class(static_cast<unsigned long>(d(rng))));
}

bool less_factor(const LinearFactor& a, const LinearFactor& b) {
  for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
    const auto c = canonical_compare(a.coeffs[j], b.coeffs[j]);
    if (c != 0) return c < 0;
  }
  return a.multiplicity < b.multiplicity;
}

template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const CapExceeded& e) {
    throw CapExceeded(name + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(name + ": " + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(name + ": " + e.what());
  } catch (const RetryExhausted& e) {
    throw RetryExhausted(name + ": " + e.what());
  } catch (const Error& e) {
    throw Error(name + ": " + e.what());
  }
}

}  // namespace

LinearSplit split_linear(const MultiPoly& f, std::uint64_t seed, int max_retries) {
  if (f.is_zero()) throw PreconditionError("cannot split the zero polynomial");
  const std::size_t m = f.nvars();
  std::vector<std::size_t> all(m);
  for (std::size_t j = 0; j < m; ++j) all[j] = j;
  if (!f.is_homogeneous_in(all)) throw PreconditionError("polynomial is not homogeneous");
  const Field field = f.field();

  LinearSplit out{{}, f, FieldElem(field, 1L), 0};
  MultiPoly cur = f;
  int unclean = 0;
  std::uint64_t draws = 0;
  while (!cur.is_constant()) {
    std::mt19937_64 rng(derive_seed(seed, draws++));
    std::vector<FieldElem> p(m, FieldElem(field, 0L));
    std::vector<FieldElem> q(m, FieldElem(field, 0L));
    for (std::size_t j = 0; j < m; ++j) {
      p[j] = draw(field, rng);
      q[j] = draw(field, rng);
    }
    // cur(q) != 0 makes every linear factor vanish somewhere on the line.
    if (cur.evaluate(q).is_zero()) {
      if (draws > static_cast<std::uint64_t>(64 + max_retries)) throw RetryExhausted("no usable restriction line");
      continue;
    }
    ++out.lines;
    const UniRoots roots = roots_in_field(restrict_to_line(cur, p, q));
    if (roots.roots.empty()) break;
    bool found = false;
    bool dirty = false;
    for (const auto& rm : roots.roots) {
      std::vector<FieldElem> z(m, FieldElem(field, 0L));
      for (std::size_t j = 0; j < m; ++j) z[j] = p[j] + rm.root * q[j];
      MultiPoly h = cur;
      for (int d = 1; d < rm.multiplicity; ++d) h = directional(h, q);
      std::vector<FieldElem> c(m, FieldElem(field, 0L));
      for (std::size_t j = 0; j < m; ++j) c[j] = h.derivative(j).evaluate(z);
      auto lead = std::find_if(c.begin(), c.end(), [](const FieldElem& x) { return !x.is_zero(); });
      if (lead == c.end()) {
        dirty = true;
        continue;
      }
      const FieldElem inv = lead->inverse();
      for (auto& x : c) x *= inv;
      const MultiPoly ell = linear_form(field, cur.vars(), c);
      int mult = 0;
      while (!cur.is_constant()) {
        try {
          cur = divexact(cur, ell);
          ++mult;
        } catch (const NotDivisible&) {
          break;
        }
      }
      if (mult == 0) {
        if (rm.multiplicity > 1) dirty = true;
        continue;
      }
      found = true;
      out.factors.push_back({c, mult});
    }
    if (!found) {
      if (!dirty) break;
      if (++unclean > max_retries) break;
    }
  }

  auto nm = make_monic(cur);
  out.remainder = std::move(nm.poly);
  out.scalar = nm.scalar;
  std::sort(out.factors.begin(), out.factors.end(), less_factor);

  MultiPoly check = out.remainder.scaled(out.scalar);
  for (const auto& lf : out.factors) check = check * linear_form(field, f.vars(), lf.coeffs).pow(static_cast<unsigned>(lf.multiplicity));
  if (!(check == f)) throw Error("linear factors do not re-expand to the input");
  return out;
}

std::vector<RecoveredRoot> roots_from_factors(const std::vector<LinearFactor>& factors, const Support& A,
                                              const std::vector<MultiPoly>* F) {
  const std::size_t n = A.ambient_dim();
  const auto& pts = A.points();
  auto find = [&](const Point& e) -> std::optional<std::size_t> {
    auto it = std::lower_bound(pts.begin(), pts.end(), e);
    if (it == pts.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - pts.begin());
  };
  const auto origin = find(Point(n, 0));
  std::vector<std::size_t> unit;
  bool chart = origin.has_value();
  for (std::size_t k = 0; k < n && chart; ++k) {
    Point e(n, 0);
    e[k] = 1;
    const auto idx = find(e);
    if (!idx) chart = false;
    else unit.push_back(*idx);
  }

  std::vector<RecoveredRoot> out;
  for (const auto& lf : factors) {
    if (lf.coeffs.size() != pts.size()) throw PreconditionError("factor length differs from |A|");
    RecoveredRoot r;
    r.projective = lf.coeffs;
    r.multiplicity = lf.multiplicity;
    if (!chart) {
      r.status = "projective-only";
      out.push_back(std::move(r));
      continue;
    }
    const FieldElem& c0 = lf.coeffs[*origin];
    if (c0.is_zero()) {
      r.status = "boundary";
      out.push_back(std::move(r));
      continue;
    }
    std::vector<FieldElem> zeta;
    bool on_torus = true;
    for (auto idx : unit) {
      zeta.push_back(lf.coeffs[idx] / c0);
      if (zeta.back().is_zero()) on_torus = false;
    }
    r.torus = zeta;
    if (!on_torus) {
      r.status = "boundary";
    } else if (F && !F->empty() && F->front().nvars() == n) {
      std::vector<FieldElem> res;
      bool zero = true;
      for (const auto& f : *F) {
        res.push_back(f.evaluate(zeta));
        zero = zero && res.back().is_zero();
      }
      r.residuals = std::move(res);
      r.status = zero ? "torus-root" : "suggested-only";
    } else {
      r.status = "candidate";
    }
    out.push_back(std::move(r));
  }
  return out;
}

SolveReport solve(const SolveInput& in, const ResultantOptions& opts, bool keep_H) {
  if (in.F.empty()) throw PreconditionError("empty system");
  const std::size_t n = in.F.size();
  const SupportTuple E = stage("supports", [&] {
    if (in.E) return *in.E;
    SupportTuple e;
    for (const auto& f : in.F) {
      if (f.nvars() < n) throw PreconditionError("fewer variables than equations");
      e.push_back(support_of(f, n));
    }
    return e;
  });
  const Support A = in.A ? *in.A : standard_simplex(n);
  const std::int64_t M = stage("mixed volume", [&] { return mixed_volume(E, opts.seed); });
  if (M == 0) throw PreconditionError("mixed volume: unfilled hypothesis M(E)>0 violated");
  const SupportTuple D = stage("fill", [&] { return in.D ? *in.D : irreducible_fill(E); });
  GcpResult g = stage("gcp", [&] { return gcp(GcpProblem{in.F, E, A, D}, opts, keep_H); });
  LinearSplit sp = stage("split", [&] { return split_linear(g.F_A, opts.seed, opts.max_retries); });
  auto roots = stage("roots", [&] { return roots_from_factors(sp.factors, A, &in.F); });
  const int k = g.k;
  const bool vanishes = g.Ch_A.is_zero();
  return SolveReport{M, k, vanishes, E, D, A, std::move(g), std::move(sp), std::move(roots)};
}

}  // namespace toricgcp
