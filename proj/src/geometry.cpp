#include "toricgcp/geometry.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "toricgcp/errors.hpp"

namespace toricgcp {

Support::Support(std::size_t ambient_dim, std::vector<Point> points) : n_(ambient_dim), pts_(std::move(points)) {
  for (const auto& p : pts_) {
    if (p.size() != n_) throw SchemaError("point has wrong dimension");
  }
  std::sort(pts_.begin(), pts_.end());
  pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

bool Support::contains(const Point& p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }

bool Support::is_subset_of(const Support& other) const {
  return std::includes(other.pts_.begin(), other.pts_.end(), pts_.begin(), pts_.end());
}

Support Support::without(const Point& p) const {
  std::vector<Point> out;
  for (const auto& q : pts_) {
    if (q != p) out.push_back(q);
  }
  return Support(n_, std::move(out));
}

Support Support::intersect(const Support& other) const {
  std::vector<Point> out;
  std::set_intersection(pts_.begin(), pts_.end(), other.pts_.begin(), other.pts_.end(),
                        std::back_inserter(out));
  return Support(n_, std::move(out));
}

std::vector<std::size_t> support_indices(const SupportTuple& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t[i].empty()) out.push_back(i);
  }
  return out;
}

namespace linalg {

namespace {

// Row echelon form in place; returns the rank and the determinant sign/product.
int eliminate(Matrix& m, mpq_class* det) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  std::size_t r = 0;
  mpq_class d = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) {
      d = 0;
      continue;
    }
    if (piv != r) {
      std::swap(m[piv], m[r]);
      d = -d;
    }
    d *= m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  if (det) *det = (r == rows && rows == cols) ? d : mpq_class(0);
  return static_cast<int>(r);
}

}  // namespace

int rank(Matrix m) { return eliminate(m, nullptr); }

mpq_class determinant(Matrix m) {
  if (m.empty()) return 1;
  mpq_class d;
  eliminate(m, &d);
  return d;
}

bool solve(Matrix a, RationalVector b, RationalVector& x) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(a[piv][c]) == 0) ++piv;
    if (piv == n) return false;
    std::swap(a[piv], a[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a[i][c]) == 0) continue;
      const mpq_class f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  x.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return true;
}

bool inverse(const Matrix& a, Matrix& inv) {
  const std::size_t n = a.size();
  Matrix m = a;
  for (std::size_t i = 0; i < n; ++i) {
    m[i].resize(2 * n, 0);
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) return false;
    std::swap(m[piv], m[c]);
    const mpq_class lead = m[c][c];
    for (auto& v : m[c]) v /= lead;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      const mpq_class f = m[i][c];
      for (std::size_t j = c; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  inv.assign(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  }
  return true;
}

}  // namespace linalg

int affine_dim(std::span<const Point> pts) {
  if (pts.empty()) return -1;
  linalg::Matrix m;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RationalVector row;
    for (std::size_t k = 0; k < pts[i].size(); ++k) row.emplace_back(pts[i][k] - pts[0][k]);
    m.push_back(std::move(row));
  }
  return m.empty() ? 0 : linalg::rank(std::move(m));
}

int dim_of(const Support& s) {
  if (s.empty()) throw PreconditionError("dimension of an empty support");
  return affine_dim(s.points());
}

Support face(const Support& s, const RationalVector& w) {
  if (s.empty()) throw PreconditionError("face of an empty support");
  if (w.size() != s.ambient_dim()) throw PreconditionError("direction has wrong dimension");
  std::vector<Point> best;
  mpq_class best_val;
  for (const auto& p : s.points()) {
    mpq_class v = 0;
    for (std::size_t k = 0; k < p.size(); ++k) v += w[k] * p[k];
    if (best.empty() || v < best_val) {
      best.assign(1, p);
      best_val = v;
    } else if (v == best_val) {
      best.push_back(p);
    }
  }
  return Support(s.ambient_dim(), std::move(best));
}

Support face(const Support& s, const Point& w) {
  RationalVector q(w.begin(), w.end());
  return face(s, q);
}

Support minkowski_sum(std::span<const Support> ss) {
  if (ss.empty()) throw PreconditionError("Minkowski sum of nothing");
  const std::size_t n = ss.front().ambient_dim();
  std::vector<Point> acc{Point(n, 0)};
  for (const auto& s : ss) {
    if (s.ambient_dim() != n) throw PreconditionError("supports live in different dimensions");
    std::set<Point> next;
    for (const auto& a : acc) {
      for (const auto& b : s.points()) {
        Point c(n);
        for (std::size_t k = 0; k < n; ++k) c[k] = a[k] + b[k];
        next.insert(std::move(c));
      }
    }
    acc.assign(next.begin(), next.end());
  }
  return Support(n, std::move(acc));
}

namespace {

std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Normal to the hyperplane spanned by n-1 difference vectors in R^n:
// component k is (-1)^k times the minor with column k removed.
Point cross_normal(const std::vector<Point>& diffs, std::size_t n) {
  Point out(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    linalg::Matrix minor;
    for (const auto& d : diffs) {
      RationalVector row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) row.emplace_back(d[j]);
      }
      minor.push_back(std::move(row));
    }
    mpq_class det = linalg::determinant(std::move(minor));
    if (k % 2 == 1) det = -det;
    out[k] = det.get_num().get_si();
  }
  std::int64_t g = 0;
  for (auto v : out) g = gcd_abs(g, v);
  if (g > 1) {
    for (auto& v : out) v /= g;
  }
  return out;
}

std::int64_t dot(const Point& a, const Point& b) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Facet hyperplanes by beneath-beyond insertion. The boundary is kept as a
// simplicial complex; a point on a facet's hyperplane counts as beneath it, so
// coplanar simplices survive and collapse when keyed by normal at the end.
std::map<Point, std::int64_t> hull_facets(const std::vector<Point>& pts, std::size_t n) {
  std::vector<std::size_t> base{0};
  for (std::size_t i = 1; i < pts.size() && base.size() <= n; ++i) {
    std::vector<Point> cand;
    for (auto b : base) cand.push_back(pts[b]);
    cand.push_back(pts[i]);
    if (affine_dim(cand) == static_cast<int>(base.size())) base.push_back(i);
  }
  // n+1 times an interior point; every facet keeps it strictly on the inner side.
  Point inner(n, 0);
  for (auto b : base)
    for (std::size_t k = 0; k < n; ++k) inner[k] += pts[b][k];
  const auto scale = static_cast<std::int64_t>(n + 1);

  struct SFacet {
    std::vector<std::size_t> v;  // sorted
    Point normal;
    std::int64_t off;
  };
  auto make = [&](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    std::vector<Point> diffs;
    for (std::size_t j = 1; j < v.size(); ++j) {
      Point d(n);
      for (std::size_t k = 0; k < n; ++k) d[k] = pts[v[j]][k] - pts[v[0]][k];
      diffs.push_back(std::move(d));
    }
    Point normal = cross_normal(diffs, n);
    std::int64_t off = dot(normal, pts[v[0]]);
    if (dot(normal, inner) < scale * off) {
      for (auto& x : normal) x = -x;
      off = -off;
    }
    return SFacet{std::move(v), std::move(normal), off};
  };

  std::vector<SFacet> facets;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<std::size_t> v;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j != skip) v.push_back(base[j]);
    }
    facets.push_back(make(std::move(v)));
  }
  std::vector<bool> in_base(pts.size(), false);
  for (auto b : base) in_base[b] = true;

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (in_base[i]) continue;
    std::vector<SFacet> keep;
    std::map<std::vector<std::size_t>, int> ridges;
    bool visible = false;
    for (auto& f : facets) {
      if (dot(f.normal, pts[i]) >= f.off) {
        keep.push_back(std::move(f));
        continue;
      }
      visible = true;
      for (std::size_t skip = 0; skip < f.v.size(); ++skip) {
        std::vector<std::size_t> r;
        for (std::size_t j = 0; j < f.v.size(); ++j) {
          if (j != skip) r.push_back(f.v[j]);
        }
        ++ridges[r];
      }
    }
    if (!visible) {
      facets = std::move(keep);
      continue;
    }
    // A ridge seen once lies between a visible and a hidden facet.
    for (const auto& [r, count] : ridges) {
      if (count != 1) continue;
      auto v = r;
      v.push_back(i);
      keep.push_back(make(std::move(v)));
    }
    facets = std::move(keep);
  }
  std::map<Point, std::int64_t> out;
  for (const auto& f : facets) out.emplace(f.normal, f.off);
  return out;
}

}  // namespace

Polytope Polytope::hull(std::size_t n, std::span<const Point> input) {
  if (n == 0 || n > kMaxHullDim) throw PreconditionError("unsupported dimension");
  std::vector<Point> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (affine_dim(pts) != static_cast<int>(n)) {
    throw PreconditionError("polytope is not full-dimensional");
  }

  const std::map<Point, std::int64_t> facet_map = hull_facets(pts, n);

  // Vertices: points whose incident facet normals span R^n.
  Polytope P;
  P.n_ = n;
  std::vector<std::size_t> vertex_of(pts.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    linalg::Matrix normals;
    for (const auto& [normal, off] : facet_map) {
      if (dot(normal, pts[i]) == off) normals.emplace_back(normal.begin(), normal.end());
    }
    if (static_cast<std::size_t>(linalg::rank(normals)) == n) {
      vertex_of[i] = P.vertices_.size();
      P.vertices_.push_back(pts[i]);
    }
  }
  for (const auto& [normal, off] : facet_map) {
    Facet f{normal, off, {}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (vertex_of[i] != pts.size() && dot(normal, pts[i]) == off) f.vertices.push_back(vertex_of[i]);
    }
    P.facets_.push_back(std::move(f));
  }

  // Face lattice as the closure of facets under intersection.
  std::set<std::vector<std::size_t>> known;
  std::deque<std::vector<std::size_t>> queue;
  for (const auto& f : P.facets_) {
    if (known.insert(f.vertices).second) queue.push_back(f.vertices);
  }
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    for (const auto& f : P.facets_) {
      std::vector<std::size_t> meet;
      std::set_intersection(cur.begin(), cur.end(), f.vertices.begin(), f.vertices.end(),
                            std::back_inserter(meet));
      if (!meet.empty() && known.insert(meet).second) queue.push_back(std::move(meet));
    }
  }
  for (const auto& vs : known) {
    Face face;
    face.vertices = vs;
    std::vector<Point> vp;
    for (auto v : vs) vp.push_back(P.vertices_[v]);
    face.dim = affine_dim(vp);
    face.normal.assign(n, 0);
    for (std::size_t fi = 0; fi < P.facets_.size(); ++fi) {
      const auto& fv = P.facets_[fi].vertices;
      if (std::includes(fv.begin(), fv.end(), vs.begin(), vs.end())) {
        face.facets.push_back(fi);
        for (std::size_t k = 0; k < n; ++k) face.normal[k] += P.facets_[fi].normal[k];
      }
    }
    P.faces_.push_back(std::move(face));
  }
  std::sort(P.faces_.begin(), P.faces_.end(), [](const Face& a, const Face& b) {
    return std::tie(a.dim, a.vertices) < std::tie(b.dim, b.vertices);
  });
  return P;
}

mpq_class Polytope::volume() const {
  // Pulling triangulation: cone each face from its smallest vertex over the
  // subfaces of one dimension less that avoid that vertex.
  std::function<std::vector<std::vector<std::size_t>>(const std::vector<std::size_t>&, int)> tri =
      [&](const std::vector<std::size_t>& vs, int d) -> std::vector<std::vector<std::size_t>> {
    if (d == 0) return {{vs.front()}};
    const std::size_t apex = vs.front();
    std::vector<std::vector<std::size_t>> out;
    for (const auto& g : faces_) {
      if (g.dim != d - 1) continue;
      if (!std::includes(vs.begin(), vs.end(), g.vertices.begin(), g.vertices.end())) continue;
      if (std::binary_search(g.vertices.begin(), g.vertices.end(), apex)) continue;
      for (auto s : tri(g.vertices, d - 1)) {
        s.push_back(apex);
        out.push_back(std::move(s));
      }
    }
    return out;
  };
  std::vector<std::size_t> all(vertices_.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  mpq_class total = 0;
  for (const auto& simplex : tri(all, static_cast<int>(n_))) {
    linalg::Matrix m;
    const Point& base = vertices_[simplex.back()];
    for (std::size_t j = 0; j + 1 < simplex.size(); ++j) {
      RationalVector row;
      for (std::size_t k = 0; k < n_; ++k) row.emplace_back(vertices_[simplex[j]][k] - base[k]);
      m.push_back(std::move(row));
    }
    total += abs(linalg::determinant(std::move(m)));
  }
  mpz_class fact = 1;
  for (std::size_t k = 2; k <= n_; ++k) fact *= static_cast<unsigned long>(k);
  return total / fact;
}

mpq_class volume(const Support& s) {
  if (s.ambient_dim() > kMaxHullDim) throw PreconditionError("unsupported dimension");
  if (s.empty() || affine_dim(s.points()) < static_cast<int>(s.ambient_dim())) return 0;
  return Polytope::hull(s.ambient_dim(), s.points()).volume();
}

Support hull_vertices(const Support& s) {
  if (s.empty()) return s;
  const std::size_t n = s.ambient_dim();
  const int d = affine_dim(s.points());
  if (d == 0) return Support(n, {s.points().front()});
  if (d == static_cast<int>(n)) {
    const Polytope P = Polytope::hull(n, s.points());
    return Support(n, P.vertices());
  }
  // Lower-dimensional: coordinates in an affine chart, scaled to integers.
  const Point& o = s.points().front();
  std::vector<Point> basis;
  linalg::Matrix rows;
  for (const auto& p : s.points()) {
    RationalVector r;
    for (std::size_t k = 0; k < n; ++k) r.emplace_back(p[k] - o[k]);
    linalg::Matrix trial = rows;
    trial.push_back(r);
    if (linalg::rank(trial) > static_cast<int>(rows.size())) {
      rows.push_back(r);
      Point b(n);
      for (std::size_t k = 0; k < n; ++k) b[k] = p[k] - o[k];
      basis.push_back(std::move(b));
    }
  }
  // Pick d coordinates on which the basis is independent.
  std::vector<std::size_t> coords;
  for (std::size_t k = 0; k < n && coords.size() < static_cast<std::size_t>(d); ++k) {
    linalg::Matrix m;
    auto trial = coords;
    trial.push_back(k);
    for (const auto& b : basis) {
      RationalVector r;
      for (auto c : trial) r.emplace_back(b[c]);
      m.push_back(std::move(r));
    }
    if (linalg::rank(m) == static_cast<int>(trial.size())) coords = trial;
  }
  // Projection to those coordinates is injective on the affine span.
  std::vector<Point> proj;
  for (const auto& p : s.points()) {
    Point q;
    for (auto c : coords) q.push_back(p[c] - o[c]);
    proj.push_back(std::move(q));
  }
  const std::size_t dd = static_cast<std::size_t>(d);
  std::vector<Point> verts;
  if (dd == 1) {
    auto [lo, hi] = std::minmax_element(proj.begin(), proj.end());
    verts.push_back(s.points()[static_cast<std::size_t>(lo - proj.begin())]);
    verts.push_back(s.points()[static_cast<std::size_t>(hi - proj.begin())]);
  } else {
    const Polytope P = Polytope::hull(dd, proj);
    for (std::size_t i = 0; i < proj.size(); ++i) {
      if (std::find(P.vertices().begin(), P.vertices().end(), proj[i]) != P.vertices().end()) {
        verts.push_back(s.points()[i]);
      }
    }
  }
  return Support(n, std::move(verts));
}

std::vector<Point> normal_face_reps(std::span<const Support> ss) {
  if (ss.empty()) throw PreconditionError("no supports given");
  const std::size_t n = ss.front().ambient_dim();
  if (n > kMaxHullDim) throw PreconditionError("unsupported dimension");
  std::vector<Support> verts;
  for (const auto& s : ss) verts.push_back(hull_vertices(s));
  const Support sum = minkowski_sum(verts);
  const Polytope P = Polytope::hull(n, sum.points());
  std::vector<Point> out;
  for (const auto& f : P.faces()) out.push_back(f.normal);
  return out;
}

}  // namespace toricgcp
