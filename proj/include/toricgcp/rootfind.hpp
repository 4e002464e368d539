#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricgcp/gcp.hpp"
#include "toricgcp/poly.hpp"

namespace toricgcp {

struct LinearFactor {
  std::vector<FieldElem> coeffs;  // one per variable, first nonzero entry 1
  int multiplicity = 1;
};

struct LinearSplit {
  std::vector<LinearFactor> factors;  // sorted canonically
  MultiPoly remainder;                // monic; no linear factors over the field
  FieldElem scalar;                   // input = scalar * prod l^m * remainder
  int lines = 0;                      // restriction lines used
};

// Linear factors of a nonzero homogeneous polynomial in all of its
// variables: restrict to lines u = p + t q, take roots, and read each factor
// off the gradient at the root (after m-1 derivatives along q for a root of
// multiplicity m). Every factor is confirmed by exact division.
LinearSplit split_linear(const MultiPoly& f, std::uint64_t seed = 0, int max_retries = 16);

struct RecoveredRoot {
  std::vector<FieldElem> projective;               // [c_e | e in A]
  std::optional<std::vector<FieldElem>> torus;     // zeta, when A has a chart at 0
  std::optional<std::vector<FieldElem>> residuals; // F(zeta), when F is given
  std::string status;
  int multiplicity = 1;
};

// status: "torus-root" (F(zeta) = 0 exactly), "suggested-only" (zeta in the
// torus but F(zeta) != 0), "candidate" (zeta in the torus, F not given),
// "boundary" (c_0 = 0 or some zeta_i = 0), "projective-only" (A lacks 0 or
// some e_i).
std::vector<RecoveredRoot> roots_from_factors(const std::vector<LinearFactor>& factors, const Support& A,
                                              const std::vector<MultiPoly>* F = nullptr);

struct SolveReport {
  std::int64_t mixed_volume = 0;
  int k = 0;
  bool chow_vanishes = false;
  SupportTuple E;
  SupportTuple D;
  Support A;
  GcpResult gcp;
  LinearSplit split;
  std::vector<RecoveredRoot> roots;
};

struct SolveInput {
  std::vector<MultiPoly> F;
  std::optional<SupportTuple> E;  // inferred from F when absent
  std::optional<Support> A;       // standard simplex when absent
  std::optional<SupportTuple> D;  // irreducible_fill(E) when absent
};

// irreducible_fill -> gcp -> split_linear -> roots_from_factors. Errors are
// rethrown with the failing stage prefixed to the message.
SolveReport solve(const SolveInput& in, const ResultantOptions& opts = {}, bool keep_H = false);

}  // namespace toricgcp
