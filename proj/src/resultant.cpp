#include "toricgcp/resultant.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "toricgcp/errors.hpp"

namespace toricgcp {

namespace {

constexpr std::uint64_t kCheckPrime = (std::uint64_t{1} << 61) - 1;

using CoeffMap = std::map<Point, MultiPoly>;

CoeffMap coeff_map(const MultiPoly& f, std::size_t n, const VarList& params) {
  CoeffMap out;
  std::map<Point, std::vector<Term>> acc;
  for (const auto& t : f.terms()) {
    Point p(t.exp.begin(), t.exp.begin() + static_cast<std::ptrdiff_t>(n));
    Exponent rest(t.exp.begin() + static_cast<std::ptrdiff_t>(n), t.exp.end());
    acc[p].push_back({std::move(rest), t.coeff});
  }
  for (auto& [p, terms] : acc) out.emplace(p, MultiPoly::from_terms(f.field(), params, std::move(terms)));
  return out;
}

struct Structure {
  std::vector<Point> points;
  std::vector<RowContent> content;
  std::vector<std::size_t> nonmixed;
  RationalVector delta;
  MixedSubdivision sd;
};

struct CellFrame {
  Point base;
  linalg::Matrix inv;                 // inverse of the edge matrix (edges as columns)
  std::vector<std::size_t> owner;     // summand of each edge
};

// Lattice points of (P + delta) with their cells; nullopt when some point
// minus delta lies on a cell boundary.
std::optional<Structure> locate(const SupportTuple& supports, MixedSubdivision sd, RationalVector delta) {
  const std::size_t n = supports.front().ambient_dim();
  const std::size_t m = supports.size();
  std::vector<CellFrame> frames;
  for (const auto& cell : sd.cells) {
    CellFrame fr;
    fr.base.assign(n, 0);
    linalg::Matrix cols;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& pts = supports[i].points();
      const auto& idx = cell.summand_idx[i];
      for (std::size_t k = 0; k < n; ++k) fr.base[k] += pts[idx[0]][k];
      for (std::size_t j = 1; j < idx.size(); ++j) {
        RationalVector e;
        for (std::size_t k = 0; k < n; ++k) e.emplace_back(pts[idx[j]][k] - pts[idx[0]][k]);
        cols.push_back(std::move(e));
        fr.owner.push_back(i);
      }
    }
    linalg::Matrix vt(n, RationalVector(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) vt[r][c] = cols[c][r];
    }
    if (!linalg::inverse(vt, fr.inv)) throw Error("singular mixed cell");
    frames.push_back(std::move(fr));
  }

  Point lo(n, 0);
  Point hi(n, 0);
  for (const auto& s : supports) {
    for (std::size_t k = 0; k < n; ++k) {
      std::int64_t a = s.points().front()[k];
      std::int64_t b = a;
      for (const auto& p : s.points()) {
        a = std::min(a, p[k]);
        b = std::max(b, p[k]);
      }
      lo[k] += a;
      hi[k] += b;
    }
  }

  Structure st;
  Point p = lo;
  RationalVector q(n);
  std::vector<mpq_class> lam(n);
  std::vector<mpq_class> sums(m);
  while (true) {
    for (std::size_t k = 0; k < n; ++k) q[k] = mpq_class(p[k]) - delta[k];
    for (std::size_t ci = 0; ci < frames.size(); ++ci) {
      const auto& fr = frames[ci];
      bool outside = false;
      bool boundary = false;
      for (auto& s : sums) s = 0;
      for (std::size_t j = 0; j < n && !outside; ++j) {
        lam[j] = 0;
        for (std::size_t k = 0; k < n; ++k) lam[j] += fr.inv[j][k] * (q[k] - fr.base[k]);
        const int sg = sgn(lam[j]);
        if (sg < 0) outside = true;
        if (sg == 0) boundary = true;
        sums[fr.owner[j]] += lam[j];
      }
      if (outside) continue;
      for (const auto& s : sums) {
        const int c = cmp(s, 1);
        if (c > 0) outside = true;
        if (c == 0) boundary = true;
      }
      if (outside) continue;
      if (boundary) return std::nullopt;
      const auto& cell = sd.cells[ci];
      std::size_t who = m;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        if (cell.type[i] == 0) who = i;
      }
      if (who == m) who = m - 1;
      if (cell.type[who] != 0) throw Error("cell without a point summand");
      const Point& a = cell.summands[who].points().front();
      Point shift(n);
      for (std::size_t k = 0; k < n; ++k) shift[k] = p[k] - a[k];
      if (!cell.is_mixed()) st.nonmixed.push_back(st.points.size());
      st.points.push_back(p);
      st.content.push_back({who, shift, ci});
      break;
    }
    std::size_t k = 0;
    while (k < n && p[k] == hi[k] + 1) {
      p[k] = lo[k];
      ++k;
    }
    if (k == n) break;
    ++p[k];
  }
  st.delta = std::move(delta);
  st.sd = std::move(sd);
  return st;
}

// Points are generated in odometer order; index them for column lookup.
std::map<Point, std::size_t> index_points(const std::vector<Point>& pts) {
  std::map<Point, std::size_t> idx;
  for (std::size_t i = 0; i < pts.size(); ++i) idx.emplace(pts[i], i);
  return idx;
}

Structure build_structure(const SupportTuple& supports, const ResultantOptions& opts, int& attempt) {
  const std::size_t n = supports.front().ambient_dim();
  // Prime exceeding every coordinate span of the sum polytope.
  std::int64_t span = static_cast<std::int64_t>(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    for (const auto& s : supports) {
      std::int64_t a = s.points().front()[k];
      std::int64_t b = a;
      for (const auto& p : s.points()) {
        a = std::min(a, p[k]);
        b = std::max(b, p[k]);
      }
      lo += a;
      hi += b;
    }
    span = std::max(span, hi - lo);
  }
  mpz_class q;
  mpz_nextprime(q.get_mpz_t(), mpz_class(static_cast<long>(span)).get_mpz_t());

  for (; attempt < opts.max_retries; ++attempt) {
    const auto a = static_cast<std::uint64_t>(attempt);
    MixedSubdivision sd = mixed_subdivision(supports, derive_seed(opts.seed, 2 * a), opts.max_retries);
    RationalVector delta;
    if (attempt == 0) {
      for (std::size_t j = 0; j < n; ++j) delta.emplace_back(mpz_class(static_cast<long>(j + 1)), q);
    } else {
      mpz_class big;
      mpz_nextprime(big.get_mpz_t(), mpz_class(1000 * q).get_mpz_t());
      std::mt19937_64 rng(derive_seed(opts.seed, 2 * a + 1));
      std::uniform_int_distribution<unsigned long> dist(1, big.get_ui() - 1);
      for (std::size_t j = 0; j < n; ++j) delta.emplace_back(mpz_class(dist(rng)), big);
    }
    for (auto& d : delta) d.canonicalize();
    auto st = locate(supports, std::move(sd), std::move(delta));
    if (st) return std::move(*st);
  }
  throw RetryExhausted("every shift put a lattice point on a cell boundary");
}

std::uint64_t addm(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s >= kCheckPrime ? s - kCheckPrime : s;
}
std::uint64_t subm(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kCheckPrime - b; }
std::uint64_t mulm(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kCheckPrime);
}
std::uint64_t invm(std::uint64_t a) {
  std::uint64_t r = 1;
  std::uint64_t e = kCheckPrime - 2;
  while (e) {
    if (e & 1) r = mulm(r, a);
    a = mulm(a, a);
    e >>= 1;
  }
  return r;
}

// On a random line of generic coefficients, det M' must divide det M with a
// quotient of degree (number of mixed rows).
bool certify(const SupportTuple& supports, const Structure& st, std::uint64_t seed) {
  const auto idx = index_points(st.points);
  const std::size_t rows = st.points.size();
  const std::size_t dres = rows - st.nonmixed.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, kCheckPrime - 1);
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> coeff(supports.size());
  for (std::size_t i = 0; i < supports.size(); ++i) {
    for (std::size_t j = 0; j < supports[i].size(); ++j) coeff[i].push_back({dist(rng), dist(rng)});
  }
  // Column of each (row, support point).
  std::vector<std::vector<std::size_t>> cols(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& rc = st.content[r];
    for (const auto& a : supports[rc.poly].points()) {
      Point c(rc.shift);
      for (std::size_t k = 0; k < c.size(); ++k) c[k] += a[k];
      auto it = idx.find(c);
      if (it == idx.end()) return false;
      cols[r].push_back(it->second);
    }
  }
  const std::size_t need = dres + 4;
  std::vector<std::uint64_t> xs;
  std::vector<std::uint64_t> ys;
  int singular = 0;
  while (xs.size() < need) {
    const std::uint64_t t = dist(rng);
    std::vector<std::vector<std::uint64_t>> m(rows, std::vector<std::uint64_t>(rows, 0));
    for (std::size_t r = 0; r < rows; ++r) {
      const auto& cf = coeff[st.content[r].poly];
      for (std::size_t j = 0; j < cols[r].size(); ++j) m[r][cols[r][j]] = addm(cf[j].first, mulm(t, cf[j].second));
    }
    std::vector<std::vector<std::uint64_t>> sub(st.nonmixed.size(), std::vector<std::uint64_t>(st.nonmixed.size()));
    for (std::size_t r = 0; r < st.nonmixed.size(); ++r) {
      for (std::size_t c = 0; c < st.nonmixed.size(); ++c) sub[r][c] = m[st.nonmixed[r]][st.nonmixed[c]];
    }
    const std::uint64_t dsub = det_mod_p(std::move(sub), kCheckPrime);
    if (dsub == 0) {
      if (++singular > 8) return false;
      continue;
    }
    const std::uint64_t dfull = det_mod_p(std::move(m), kCheckPrime);
    xs.push_back(t);
    ys.push_back(mulm(dfull, invm(dsub)));
  }
  if (std::all_of(ys.begin(), ys.end(), [](std::uint64_t y) { return y == 0; })) return false;
  // Interpolate through the first dres+1 values and test the others.
  for (std::size_t chk = dres + 1; chk < need; ++chk) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k <= dres; ++k) {
      std::uint64_t num = 1;
      std::uint64_t den = 1;
      for (std::size_t j = 0; j <= dres; ++j) {
        if (j == k) continue;
        num = mulm(num, subm(xs[chk], xs[j]));
        den = mulm(den, subm(xs[k], xs[j]));
      }
      acc = addm(acc, mulm(ys[k], mulm(num, invm(den))));
    }
    if (acc != ys[chk]) return false;
  }
  return true;
}

PolyMatrix fill_matrix(const Structure& st, const std::vector<CoeffMap>& coeffs, const Field& field,
                       const VarList& params) {
  const auto idx = index_points(st.points);
  PolyMatrix m(field, params, st.points.size());
  for (std::size_t r = 0; r < st.points.size(); ++r) {
    const auto& rc = st.content[r];
    for (const auto& [a, c] : coeffs[rc.poly]) {
      Point col(rc.shift);
      for (std::size_t k = 0; k < col.size(); ++k) col[k] += a[k];
      auto it = idx.find(col);
      if (it == idx.end()) throw Error("row support leaves the matrix");
      m.at(r, it->second) = c;
    }
  }
  return m;
}

// Variables to interpolate: parameters used by the first n polynomials, if
// there are at most two of them and the matrix is large.
std::vector<std::size_t> interpolation_vars(const std::vector<CoeffMap>& coeffs, std::size_t rows,
                                            const ResultantOptions& opts) {
  if (rows <= opts.symbolic_rows) return {};
  std::set<std::size_t> used;
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
    for (const auto& [a, c] : coeffs[i]) {
      for (auto v : c.used_vars()) used.insert(v);
    }
  }
  if (used.empty() || used.size() > 2) return {};
  return {used.begin(), used.end()};
}

bool passes_checks(const MultiPoly& q, const ResultantOptions& opts) {
  if (q.is_zero()) return true;
  for (const auto& [vars, deg] : opts.homogeneous) {
    if (!q.is_homogeneous_in(vars) || q.degree_in(vars) != deg) return false;
  }
  return true;
}

void validate(const SupportTuple& supports, const std::vector<MultiPoly>& polys, std::size_t n) {
  if (supports.size() != n + 1 || polys.size() != n + 1) {
    throw PreconditionError("need n+1 supports and polynomials");
  }
  for (const auto& s : supports) {
    if (s.ambient_dim() != n) throw PreconditionError("support has wrong dimension");
    if (s.empty()) throw PreconditionError("empty support");
  }
  for (const auto& p : polys) {
    if (p.field() != polys.front().field() || !same_vars(p.vars(), polys.front().vars())) {
      throw PreconditionError("incompatible rings");
    }
  }
  if (polys.front().nvars() < n) throw PreconditionError("too few variables");
  for (std::size_t i = 0; i <= n; ++i) {
    if (!support_of(polys[i], n).is_subset_of(supports[i])) {
      throw PreconditionError("polynomial has a monomial outside its declared support");
    }
  }
}

}  // namespace

Support support_of(const MultiPoly& p, std::size_t n) {
  std::vector<Point> pts;
  for (const auto& t : p.terms()) pts.emplace_back(t.exp.begin(), t.exp.begin() + static_cast<std::ptrdiff_t>(n));
  return Support(n, std::move(pts));
}

VarList parameter_vars(const VarList& vars, std::size_t n) {
  return make_vars(std::vector<std::string>(vars->begin() + static_cast<std::ptrdiff_t>(n), vars->end()));
}

CEMatrix ce_matrix(const SupportTuple& supports, const std::vector<MultiPoly>& polys, std::size_t n,
                   const ResultantOptions& opts, int attempt) {
  validate(supports, polys, n);
  Structure st = build_structure(supports, opts, attempt);
  if (st.points.size() > opts.cap) {
    throw CapExceeded("matrix has " + std::to_string(st.points.size()) + " rows, above the cap of " +
                      std::to_string(opts.cap));
  }
  const VarList params = parameter_vars(polys.front().vars(), n);
  std::vector<CoeffMap> coeffs;
  for (const auto& p : polys) coeffs.push_back(coeff_map(p, n, params));
  CEMatrix out{st.points, st.content, fill_matrix(st, coeffs, polys.front().field(), params), st.nonmixed,
               st.delta, std::move(st.sd), opts.seed, attempt};
  return out;
}

ResultantValue toric_resultant(const SupportTuple& supports, const std::vector<MultiPoly>& polys,
                               const ResultantOptions& opts) {
  const std::size_t n = supports.empty() ? 0 : supports.size() - 1;
  validate(supports, polys, n);
  const Field field = polys.front().field();
  const VarList params = parameter_vars(polys.front().vars(), n);
  std::vector<CoeffMap> coeffs;
  for (const auto& p : polys) coeffs.push_back(coeff_map(p, n, params));

  std::optional<Structure> singular;
  int attempt = 0;
  int tries = 0;
  while (attempt < opts.max_retries) {
    Structure st = build_structure(supports, opts, attempt);
    ++tries;
    const int used = attempt++;
    if (st.points.size() > opts.cap) {
      throw CapExceeded("matrix has " + std::to_string(st.points.size()) + " rows, above the cap of " +
                        std::to_string(opts.cap));
    }
    if (!certify(supports, st, derive_seed(opts.seed, 0x5eed0000ULL + static_cast<std::uint64_t>(used)))) continue;
    const PolyMatrix m = fill_matrix(st, coeffs, field, params);
    const auto ivars = interpolation_vars(coeffs, m.dim(), opts);
    const MultiPoly dsub = det_interpolated(m.principal(st.nonmixed), ivars);
    if (dsub.is_zero()) {
      if (!singular) singular = std::move(st);
      continue;
    }
    const MultiPoly dfull = det_interpolated(m, ivars);
    MultiPoly q(field, params);
    try {
      q = divexact(dfull, dsub);
    } catch (const NotDivisible&) {
      continue;
    }
    if (!passes_checks(q, opts)) continue;
    ResultantValue rv{q, FieldElem(field, 1L), supports, m.dim(), tries, false};
    if (!q.is_zero()) {
      auto nz = make_primitive(q);
      rv.poly = std::move(nz.poly);
      rv.scalar = nz.scalar;
    }
    return rv;
  }

  if (singular) {
    // Perturb f_i by t * r_i with random small coefficients on the full
    // support; det M' is then a nonzero polynomial in t.
    std::vector<std::string> names(params->begin(), params->end());
    std::string tname = "_t";
    while (std::find(names.begin(), names.end(), tname) != names.end()) tname += "_";
    names.push_back(tname);
    const VarList pvars = make_vars(names);
    const std::size_t tv = names.size() - 1;
    std::mt19937_64 rng(derive_seed(opts.seed, 0x7e57ULL));
    std::uniform_int_distribution<long> dist(1, 97);
    std::vector<CoeffMap> pc;
    for (std::size_t i = 0; i <= n; ++i) {
      CoeffMap cm;
      for (const auto& [a, c] : coeffs[i]) cm.emplace(a, c.embed(pvars));
      if (i < n) {
        for (const auto& a : supports[i].points()) {
          Exponent e(names.size(), 0);
          e[tv] = 1;
          MultiPoly extra = MultiPoly::monomial(field, pvars, e, FieldElem(field, dist(rng)));
          auto it = cm.find(a);
          if (it == cm.end()) {
            cm.emplace(a, extra);
          } else {
            it->second += extra;
          }
        }
      }
      pc.push_back(std::move(cm));
    }
    const PolyMatrix m = fill_matrix(*singular, pc, field, pvars);
    const auto ivars = interpolation_vars(pc, m.dim(), opts);
    const MultiPoly dsub = det_interpolated(m.principal(singular->nonmixed), ivars);
    if (!dsub.is_zero()) {
      try {
        const MultiPoly qt = divexact(det_interpolated(m, ivars), dsub);
        const MultiPoly q = qt.substitute(tv, FieldElem(field, 0L)).embed(params);
        if (passes_checks(q, opts)) {
          ResultantValue rv{q, FieldElem(field, 1L), supports, m.dim(), tries, true};
          if (!q.is_zero()) {
            auto nz = make_primitive(q);
            rv.poly = std::move(nz.poly);
            rv.scalar = nz.scalar;
          }
          return rv;
        }
      } catch (const NotDivisible&) {
      }
    }
  }
  throw RetryExhausted("unlucky specialization - supply symbolic tags");
}

}  // namespace toricgcp
