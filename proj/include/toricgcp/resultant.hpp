#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "toricgcp/det.hpp"
#include "toricgcp/geometry.hpp"
#include "toricgcp/poly.hpp"
#include "toricgcp/subdivision.hpp"

namespace toricgcp {

struct ResultantOptions {
  std::uint64_t seed = 0;
  int max_retries = 16;
  std::size_t cap = 2000;
  // Above this many rows, parameters that occur only in the first n
  // polynomials are handled by evaluation and interpolation (at most two
  // of them), instead of symbolic elimination.
  std::size_t symbolic_rows = 12;
  // Extra acceptance conditions: the result must be homogeneous of the given
  // degree in each listed group of parameter variables (indices into the
  // parameter list). A failing candidate triggers a retry.
  std::vector<std::pair<std::vector<std::size_t>, int>> homogeneous;
};

struct RowContent {
  std::size_t poly;  // which polynomial, 0..n
  Point shift;       // the row holds x^shift * f_poly
  std::size_t cell;  // cell of the subdivision containing point - delta
};

// Canny-Emiris matrix. Rows and columns are indexed by the lattice points of
// the shifted Minkowski sum; the last polynomial has the lowest priority
// when assigning row content, so exactly M(A_1..A_n) rows belong to it.
struct CEMatrix {
  std::vector<Point> points;
  std::vector<RowContent> content;
  PolyMatrix matrix;
  std::vector<std::size_t> nonmixed;  // indices of the rows/columns of M'
  RationalVector delta;
  MixedSubdivision subdivision;
  std::uint64_t seed = 0;
  int attempt = 0;
};

// polys share one variable list; the first n variables are the torus
// variables and the rest are parameters, which the entries are written in.
// Throws PreconditionError on bad input, CapExceeded above opts.cap rows and
// RetryExhausted when every shift lands a point on a cell boundary.
CEMatrix ce_matrix(const SupportTuple& supports, const std::vector<MultiPoly>& polys, std::size_t n,
                   const ResultantOptions& opts, int attempt = 0);

struct ResultantValue {
  MultiPoly poly;      // over the parameter variables; zero when it vanishes
  FieldElem scalar;    // det M / det M' = scalar * poly
  SupportTuple supports;
  std::size_t rows = 0;
  int attempts = 0;
  bool perturbed = false;  // computed through an auxiliary perturbation
};

// Res = det(M) / det(M'), normalized by make_primitive. Each matrix structure
// is first checked on a random coefficient line over a 61-bit prime field:
// det M' must divide det M there, otherwise another lifting and shift are
// tried. If M' becomes singular after specialization, the first n
// polynomials are perturbed by t * (random polynomial) and t is set to 0
// after the exact division.
ResultantValue toric_resultant(const SupportTuple& supports, const std::vector<MultiPoly>& polys,
                               const ResultantOptions& opts = {});

// The support of a polynomial in its first n variables.
Support support_of(const MultiPoly& p, std::size_t n);

// Parameter ring used for the entries: the variables after the first n.
VarList parameter_vars(const VarList& vars, std::size_t n);

}  // namespace toricgcp
