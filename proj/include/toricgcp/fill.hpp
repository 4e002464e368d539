#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricgcp/geometry.hpp"

namespace toricgcp {

using IndexSet = std::vector<std::size_t>;  // sorted, 0-based

// J is essential for C when every C_j (j in J) is nonempty, the sum over J
// has dimension |J|-1, and every nonempty proper J' has dimension >= |J'|.
// Throws PreconditionError for an empty J or an index out of range.
bool is_essential(const SupportTuple& c, const IndexSet& j);

// All essential subsets, in order of increasing size then lexicographic.
std::vector<IndexSet> essential_subsets(const SupportTuple& c);

struct FaceWitness {
  Point w;
  IndexSet essential;  // subset of Supp(D ∩ E^w) essential for E^w
};

struct FillCertificate {
  SupportTuple D;
  SupportTuple E;
  bool fills = false;
  std::vector<FaceWitness> witnesses;  // one per face when fills holds
  std::optional<Point> failing_w;      // first face without a witness
  std::optional<bool> irreducible;     // set when requested and fills holds
};

// Face criterion over one inner normal per face of the sum of hulls of E.
// Throws PreconditionError when some D_i is not inside E_i or M(E) = 0.
FillCertificate fills(const SupportTuple& D, const SupportTuple& E, bool check_irreducible = false);

// Greedy point removal (entry order, then lexicographic) to a fixed point.
SupportTuple irreducible_fill(const SupportTuple& E);

}  // namespace toricgcp
