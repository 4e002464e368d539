#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricgcp/geometry.hpp"
#include "toricgcp/poly.hpp"
#include "toricgcp/resultant.hpp"

namespace toricgcp {

// F: n polynomials whose first n variables are the torus variables; any
// further variables are parameters and stay symbolic.
struct GcpProblem {
  std::vector<MultiPoly> F;
  SupportTuple E;
  Support A;
  SupportTuple D;
};

struct GcpResult {
  std::optional<MultiPoly> H;   // kept on request
  int k = 0;                    // lowest power of s in H
  MultiPoly F_A;                // coefficient of s^k, normalized
  FieldElem F_A_scalar;         // coefficient of s^k in H = scalar * F_A
  MultiPoly Ch_A;               // coefficient of s^0, normalized; zero when it vanishes
  std::int64_t mixed_volume = 0;
  int s_degree = 0;
  int expected_s_degree = 0;    // sum_i M(E with E_i replaced by A)
  std::size_t H_terms = 0;
  std::size_t rows = 0;
  int attempts = 0;
  bool perturbed = false;
};

// Names of the tag variables, one per point of A in sorted order.
std::vector<std::string> tag_names(std::size_t count);

// f_i - s * sum_{e in D_i} x^e over vars + [s]. Throws PreconditionError
// when some D_i is not inside E_i.
std::vector<MultiPoly> perturb_system(const std::vector<MultiPoly>& F, const SupportTuple& D,
                                      const SupportTuple& E);

// g = sum_{e in A} u_e x^e over the given variables; u_j is variable
// first_tag + j.
MultiPoly generic_form(Field field, const VarList& vars, std::size_t n, const Support& A, std::size_t first_tag);

GcpResult gcp(const GcpProblem& problem, const ResultantOptions& opts = {}, bool keep_H = false);

// Res_{(E,A)}(F, g) in the tags (and any parameters of F); zero when it
// vanishes identically.
MultiPoly chow_form(const std::vector<MultiPoly>& F, const SupportTuple& E, const Support& A,
                    const ResultantOptions& opts = {});

// Every normal cone of Conv(P) lies in one normal cone of Conv(Q). P must be
// full-dimensional.
bool is_compatible(const Support& P, const Support& Q);

// First simplex product from a fixed catalog that Conv(P) is compatible with.
std::optional<Support> twisted_chow_support(const Support& P);

// Catalog order: full simplex, reflected full simplex, cube, then the other
// coordinate partitions with every orientation per block.
std::vector<Support> simplex_product_catalog(std::size_t n);

Support standard_simplex(std::size_t n);
Support unit_cube(std::size_t n);

}  // namespace toricgcp
