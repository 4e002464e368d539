#pragma once

#include <cstdint>
#include <vector>

#include "toricgcp/geometry.hpp"

namespace toricgcp {

struct MixedCell {
  // For each tuple entry, indices into that entry's points() forming the
  // summand; the first index is the base point.
  std::vector<std::vector<std::size_t>> summand_idx;
  SupportTuple summands;
  std::vector<int> type;    // dim of each summand
  mpq_class volume;         // Euclidean volume of the cell
  mpz_class det;            // |det| of the edge vectors, one row per non-base point
  RationalVector normal;    // w with (w, 1) the inner normal of the lifted facet

  // Every summand is a point or a segment.
  bool is_mixed() const;
};

struct MixedSubdivision {
  SupportTuple tuple;
  std::vector<std::vector<std::int64_t>> lifting;  // lifting[i][j] for tuple[i].points()[j]
  std::vector<MixedCell> cells;
  std::uint64_t seed = 0;
  int attempts = 0;
};

// 64-bit seed derivation shared by every randomized stage.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Fine coherent mixed subdivision from random liftings in [0, 2^16).
// Throws PreconditionError when the sum is not full-dimensional and
// RetryExhausted ("degenerate liftings") after max_retries failures.
MixedSubdivision mixed_subdivision(const SupportTuple& t, std::uint64_t seed, int max_retries = 32);

// Normalized mixed volume of n supports in Z^n.
std::int64_t mixed_volume(const SupportTuple& t, std::uint64_t seed = 0);

// Inclusion-exclusion over Euclidean volumes of partial sums (n <= 4).
std::int64_t mixed_volume_by_volumes(const SupportTuple& t);

}  // namespace toricgcp
