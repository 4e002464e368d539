#include "toricgcp/det.hpp"

#include <algorithm>
#include <utility>

#include "toricgcp/errors.hpp"
#include "toricgcp/univariate.hpp"

namespace toricgcp {

PolyMatrix::PolyMatrix(Field field, VarList vars, std::size_t dim)
    : field_(field), vars_(std::move(vars)), dim_(dim), data_(dim * dim, MultiPoly(field, vars_)) {}

PolyMatrix PolyMatrix::principal(const std::vector<std::size_t>& idx) const {
  PolyMatrix out(field_, vars_, idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t c = 0; c < idx.size(); ++c) out.at(r, c) = at(idx[r], idx[c]);
  }
  return out;
}

MultiPoly det_fraction_free(const PolyMatrix& input) {
  const std::size_t n = input.dim();
  const MultiPoly one = MultiPoly::constant(input.field(), input.vars(), FieldElem(input.field(), 1L));
  if (n == 0) return one;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto& e = input.at(r, c);
      if (e.field() != input.field() || !same_vars(e.vars(), input.vars())) {
        throw PreconditionError("incompatible rings");
      }
    }
  }

  std::vector<std::vector<MultiPoly>> m(n);
  for (std::size_t r = 0; r < n; ++r) {
    m[r].reserve(n);
    for (std::size_t c = 0; c < n; ++c) m[r].push_back(input.at(r, c));
  }

  bool negate = false;
  MultiPoly prev = one;
  for (std::size_t k = 0; k < n; ++k) {
    // Constant pivots first, then the sparsest entry: numeric rows are
    // eliminated before symbolic ones, which keeps the minors small.
    std::size_t pr = n;
    std::size_t pc = n;
    std::pair<int, std::size_t> best{2, 0};
    for (std::size_t r = k; r < n; ++r) {
      for (std::size_t c = k; c < n; ++c) {
        const auto& e = m[r][c];
        if (e.is_zero()) continue;
        const std::pair<int, std::size_t> score{e.is_constant() ? 0 : 1, e.size()};
        if (pr == n || score < best) {
          best = score;
          pr = r;
          pc = c;
        }
      }
      if (pr != n && best.first == 0) break;
    }
    if (pr == n) return MultiPoly(input.field(), input.vars());
    if (pr != k) {
      std::swap(m[pr], m[k]);
      negate = !negate;
    }
    if (pc != k) {
      for (auto& row : m) std::swap(row[pc], row[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const bool zero_lead = m[i][k].is_zero();
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[k][k] * m[i][j];
        if (!zero_lead && !m[k][j].is_zero()) num -= m[i][k] * m[k][j];
        m[i][j] = prev.is_constant() ? num.scaled(prev.leading_term().coeff.inverse())
                                     : divexact(num, prev);
      }
      m[i][k] = MultiPoly(input.field(), input.vars());
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace toricgcp

namespace toricgcp {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod_u(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::uint64_t det_mod_p(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p) {
  const std::size_t n = m.size();
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = det == 0 ? 0 : p - det;
    }
    det = mulmod(det, m[k][k], p);
    const std::uint64_t inv = powmod_u(m[k][k], p - 2, p);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const std::uint64_t f = mulmod(m[i][k], inv, p);
      for (std::size_t j = k; j < n; ++j) {
        const std::uint64_t sub = mulmod(f, m[k][j], p);
        m[i][j] = m[i][j] >= sub ? m[i][j] - sub : m[i][j] + p - sub;
      }
    }
  }
  return det;
}

MultiPoly det_interpolated(const PolyMatrix& m, std::span<const std::size_t> vars) {
  if (vars.empty()) return det_fraction_free(m);
  const std::size_t v = vars.front();
  const auto rest = vars.subspan(1);
  const std::size_t n = m.dim();
  std::size_t bound = 0;
  for (std::size_t r = 0; r < n; ++r) {
    int row = 0;
    for (std::size_t c = 0; c < n; ++c) row = std::max(row, m.at(r, c).degree(v));
    bound += static_cast<std::size_t>(row);
  }
  if (bound == 0) return det_interpolated(m, rest);
  const Field f = m.field();
  if (!f.is_rational() && f.characteristic() <= bound) return det_fraction_free(m);

  std::vector<FieldElem> xs;
  std::vector<MultiPoly> ys;
  for (std::size_t k = 0; k <= bound; ++k) {
    const FieldElem x(f, static_cast<long>(k));
    PolyMatrix mk(f, m.vars(), n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) mk.at(r, c) = m.at(r, c).substitute(v, x);
    }
    xs.push_back(x);
    ys.push_back(det_interpolated(mk, rest));
  }

  // Lagrange: W(t) = prod (t - x_j), L_k = W / (t - x_k) / W'(x_k).
  UniPoly w = UniPoly::constant(f, FieldElem(f, 1L));
  for (const auto& x : xs) w = w * UniPoly::x_minus(x);
  MultiPoly out(f, m.vars());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (ys[k].is_zero()) continue;
    const UniPoly lk = divmod(w, UniPoly::x_minus(xs[k])).quot;
    const FieldElem denom = lk(xs[k]);
    out += ys[k] * from_unipoly(lk.scaled(denom.inverse()), m.vars(), v);
  }
  return out;
}

}  // namespace toricgcp
