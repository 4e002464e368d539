#include "toricgcp/subdivision.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "toricgcp/errors.hpp"

namespace toricgcp {

namespace {

using i128 = __int128;

i128 iabs(i128 v) { return v < 0 ? -v : v; }

i128 igcd(i128 a, i128 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}

// Incremental echelon basis over Z, used to prune rank-deficient choices.
class Echelon {
 public:
  explicit Echelon(std::size_t n) : n_(n) {}

  // Adds v if independent of the current rows; returns false otherwise.
  bool add(std::vector<i128> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = piv_[r];
      if (v[c] == 0) continue;
      const i128 a = rows_[r][c];
      const i128 b = v[c];
      i128 g = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        v[j] = a * v[j] - b * rows_[r][j];
        g = igcd(g, v[j]);
      }
      if (g > 1) {
        for (auto& x : v) x /= g;
      }
    }
    std::size_t c = 0;
    while (c < n_ && v[c] == 0) ++c;
    if (c == n_) return false;
    rows_.push_back(std::move(v));
    piv_.push_back(c);
    return true;
  }
  void pop() {
    rows_.pop_back();
    piv_.pop_back();
  }

 private:
  std::size_t n_;
  std::vector<std::vector<i128>> rows_;
  std::vector<std::size_t> piv_;
};

// det and adjugate of a small integer matrix by cofactors of a
// fraction-free Gauss-Jordan sweep.
bool det_adj(std::vector<std::vector<i128>> m, i128& det, std::vector<std::vector<i128>>& adj) {
  const std::size_t n = m.size();
  std::vector<std::vector<i128>> aug(n, std::vector<i128>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  i128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && aug[p][k] == 0) ++p;
    if (p == n) return false;
    if (p != k) {
      std::swap(aug[p], aug[k]);
      sign = -sign;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        aug[i][j] = (aug[k][k] * aug[i][j] - aug[i][k] * aug[k][j]) / prev;
      }
      aug[i][k] = 0;
    }
    prev = aug[k][k];
  }
  // After the sweep every diagonal entry equals det (up to the row-swap sign)
  // and the right block is det * inverse.
  det = sign * prev;
  adj.assign(n, std::vector<i128>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) adj[i][j] = sign * aug[i][n + j];
  }
  return true;
}

mpz_class factorial(std::size_t k) {
  mpz_class f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

struct Enumerator {
  const SupportTuple& t;
  const std::vector<std::vector<std::int64_t>>& lift;
  std::size_t n;
  std::vector<MixedCell>& out;

  std::vector<std::vector<std::size_t>> chosen;
  std::vector<std::vector<i128>> rows;
  std::vector<i128> rhs;
  bool degenerate = false;

  void run() {
    chosen.assign(t.size(), {});
    Echelon ech(n);
    rec(0, n, ech);
  }

  void rec(std::size_t i, std::size_t remaining, Echelon& ech) {
    if (i == t.size()) {
      if (remaining == 0) finish();
      return;
    }
    const auto& pts = t[i].points();
    const std::size_t maxk = std::min(remaining, pts.size() - 1);
    for (std::size_t k = 0; k <= maxk; ++k) {
      // Entries after i must be able to absorb what is left.
      std::size_t capacity = 0;
      for (std::size_t j = i + 1; j < t.size(); ++j) capacity += t[j].size() - 1;
      if (remaining - k > capacity) continue;
      std::vector<std::size_t> subset(k + 1);
      choose(i, k, 0, 0, subset, remaining, ech);
    }
  }

  void choose(std::size_t i, std::size_t k, std::size_t depth, std::size_t start,
              std::vector<std::size_t>& subset, std::size_t remaining, Echelon& ech) {
    const auto& pts = t[i].points();
    if (depth == k + 1) {
      chosen[i] = subset;
      rec(i + 1, remaining - k, ech);
      return;
    }
    for (std::size_t a = start; a + (k + 1 - depth) <= pts.size(); ++a) {
      subset[depth] = a;
      if (depth == 0) {
        choose(i, k, 1, a + 1, subset, remaining, ech);
        continue;
      }
      std::vector<i128> v(n);
      const auto& b = pts[subset[0]];
      for (std::size_t c = 0; c < n; ++c) v[c] = pts[a][c] - b[c];
      if (!ech.add(v)) continue;
      rows.push_back(v);
      rhs.push_back(-(static_cast<i128>(lift[i][a]) - lift[i][subset[0]]));
      choose(i, k, depth + 1, a + 1, subset, remaining, ech);
      rows.pop_back();
      rhs.pop_back();
      ech.pop();
    }
  }

  void finish() {
    i128 det = 0;
    std::vector<std::vector<i128>> adj;
    if (!det_adj(rows, det, adj)) return;
    // w = adj * rhs / det; compare det*(<w,a> + lift) scaled by sign(det).
    std::vector<i128> W(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) W[r] += adj[r][c] * rhs[c];
    }
    const i128 sgn_det = det < 0 ? -1 : 1;
    bool tie = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto& pts = t[i].points();
      auto value = [&](std::size_t a) {
        i128 v = det * lift[i][a];
        for (std::size_t c = 0; c < n; ++c) v += W[c] * pts[a][c];
        return sgn_det * v;
      };
      const i128 base = value(chosen[i][0]);
      for (std::size_t a = 0; a < pts.size(); ++a) {
        const i128 v = value(a);
        if (v < base) return;
        if (v == base && std::find(chosen[i].begin(), chosen[i].end(), a) == chosen[i].end()) tie = true;
      }
    }
    // A lower facet holding an unchosen point: the lifting is not generic.
    if (tie) {
      degenerate = true;
      return;
    }
    MixedCell cell;
    cell.summand_idx = chosen;
    mpz_class denom = 1;
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::vector<Point> pts;
      for (auto a : chosen[i]) pts.push_back(t[i].points()[a]);
      cell.summands.emplace_back(n, pts);
      cell.type.push_back(static_cast<int>(chosen[i].size()) - 1);
      denom *= factorial(chosen[i].size() - 1);
    }
    cell.det = to_mpz(iabs(det));
    cell.volume = mpq_class(cell.det, denom);
    cell.volume.canonicalize();
    for (std::size_t c = 0; c < n; ++c) {
      mpq_class w(to_mpz(W[c]), to_mpz(det));
      w.canonicalize();
      cell.normal.push_back(w);
    }
    out.push_back(std::move(cell));
  }
};

}  // namespace

bool MixedCell::is_mixed() const {
  return std::all_of(type.begin(), type.end(), [](int k) { return k <= 1; });
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MixedSubdivision mixed_subdivision(const SupportTuple& t, std::uint64_t seed, int max_retries) {
  if (t.empty()) throw PreconditionError("empty tuple");
  const std::size_t n = t.front().ambient_dim();
  for (const auto& s : t) {
    if (s.ambient_dim() != n) throw PreconditionError("supports live in different dimensions");
    if (s.empty()) throw PreconditionError("empty support in tuple");
  }
  std::vector<Support> verts;
  for (const auto& s : t) verts.push_back(hull_vertices(s));
  const Support sum = minkowski_sum(verts);
  if (affine_dim(sum.points()) != static_cast<int>(n)) {
    throw PreconditionError("sum polytope is not full-dimensional");
  }

  for (int attempt = 0; attempt < max_retries; ++attempt) {
    MixedSubdivision sd;
    sd.tuple = t;
    sd.seed = seed;
    sd.attempts = attempt + 1;
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::uniform_int_distribution<std::int64_t> dist(0, (1 << 16) - 1);
    for (const auto& s : t) {
      std::vector<std::int64_t> l(s.size());
      for (auto& v : l) v = dist(rng);
      sd.lifting.push_back(std::move(l));
    }
    Enumerator e{t, sd.lifting, n, sd.cells, {}, {}, {}};
    e.run();
    if (!e.degenerate) return sd;
  }
  throw RetryExhausted("degenerate liftings (seed " + std::to_string(seed) + ", " +
                       std::to_string(max_retries) + " attempts)");
}

std::int64_t mixed_volume(const SupportTuple& t, std::uint64_t seed) {
  if (t.empty()) throw PreconditionError("empty tuple");
  const std::size_t n = t.front().ambient_dim();
  if (t.size() != n) throw PreconditionError("mixed volume needs exactly n supports in Z^n");
  for (const auto& s : t) {
    if (s.empty()) throw PreconditionError("empty support in tuple");
  }
  std::vector<Support> verts;
  for (const auto& s : t) verts.push_back(hull_vertices(s));
  if (affine_dim(minkowski_sum(verts).points()) < static_cast<int>(n)) return 0;
  const MixedSubdivision sd = mixed_subdivision(verts, seed);
  mpz_class m = 0;
  for (const auto& c : sd.cells) {
    if (c.is_mixed()) m += c.det;
  }
  return m.get_si();
}

std::int64_t mixed_volume_by_volumes(const SupportTuple& t) {
  if (t.empty()) throw PreconditionError("empty tuple");
  const std::size_t n = t.size();
  std::vector<Support> verts;
  for (const auto& s : t) verts.push_back(hull_vertices(s));
  mpq_class acc = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Support> part;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) part.push_back(verts[i]);
    }
    const mpq_class v = volume(minkowski_sum(part));
    if ((n - part.size()) % 2 == 0) {
      acc += v;
    } else {
      acc -= v;
    }
  }
  if (acc.get_den() != 1) throw Error("mixed volume is not an integer");
  return acc.get_num().get_si();
}

}  // namespace toricgcp
