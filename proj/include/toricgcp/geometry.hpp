#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

namespace toricgcp {

using Point = std::vector<std::int64_t>;
using RationalVector = std::vector<mpq_class>;

// Finite set of lattice points in Z^n, kept sorted and duplicate free.
class Support {
 public:
  Support() = default;
  Support(std::size_t ambient_dim, std::vector<Point> points);

  std::size_t ambient_dim() const { return n_; }
  const std::vector<Point>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  bool contains(const Point& p) const;
  bool is_subset_of(const Support& other) const;
  Support without(const Point& p) const;
  Support intersect(const Support& other) const;

  friend bool operator==(const Support&, const Support&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Point> pts_;
};

using SupportTuple = std::vector<Support>;

// Indices i with a nonempty entry.
std::vector<std::size_t> support_indices(const SupportTuple& t);

// Affine dimension of a point set; the empty set has dimension -1.
int affine_dim(std::span<const Point> pts);
// Throws PreconditionError on an empty support.
int dim_of(const Support& s);

// Points of s minimizing <x, w>. w = 0 returns s.
Support face(const Support& s, const RationalVector& w);
Support face(const Support& s, const Point& w);

// Pointwise sums, deduplicated; no hull is taken.
Support minkowski_sum(std::span<const Support> ss);

// Convex hull of a full-dimensional lattice point set in R^n, n <= 4.
class Polytope {
 public:
  struct Facet {
    Point normal;         // primitive inner normal
    std::int64_t offset;  // <normal, x> >= offset on the polytope
    std::vector<std::size_t> vertices;
  };
  struct Face {
    std::vector<std::size_t> vertices;  // indices into vertices()
    int dim;
    std::vector<std::size_t> facets;    // facets containing the face
    Point normal;                       // sum of those facets' normals
  };

  // Throws PreconditionError for n > 4 or when the points do not span R^n.
  static Polytope hull(std::size_t n, std::span<const Point> points);

  std::size_t ambient_dim() const { return n_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  // Every nonempty proper face, vertices and facets included.
  const std::vector<Face>& faces() const { return faces_; }

  mpq_class volume() const;  // Euclidean

 private:
  std::size_t n_ = 0;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
  std::vector<Face> faces_;
};

constexpr std::size_t kMaxHullDim = 4;

// Euclidean volume of Conv(s); 0 when s is not full-dimensional.
mpq_class volume(const Support& s);

// One integral inner normal per nonempty proper face of sum_i Conv(ss_i).
std::vector<Point> normal_face_reps(std::span<const Support> ss);

// Vertices of Conv(s) (s need not be full-dimensional; uses an affine chart).
Support hull_vertices(const Support& s);

namespace linalg {

using Matrix = std::vector<RationalVector>;

int rank(Matrix m);
mpq_class determinant(Matrix m);
// Unique solution of A x = b for square nonsingular A, else empty.
bool solve(Matrix a, RationalVector b, RationalVector& x);
// Inverse of a square nonsingular matrix; false if singular.
bool inverse(const Matrix& a, Matrix& inv);

}  // namespace linalg

}  // namespace toricgcp
