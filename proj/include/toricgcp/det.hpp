#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "toricgcp/poly.hpp"

namespace toricgcp {

// Dense square matrix of polynomials over one ring. An empty matrix still
// knows its ring so that det() can return the constant 1.
class PolyMatrix {
 public:
  PolyMatrix(Field field, VarList vars, std::size_t dim);

  std::size_t dim() const { return dim_; }
  Field field() const { return field_; }
  const VarList& vars() const { return vars_; }

  MultiPoly& at(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const MultiPoly& at(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  // Principal submatrix on the given (sorted) indices.
  PolyMatrix principal(const std::vector<std::size_t>& idx) const;

 private:
  Field field_;
  VarList vars_;
  std::size_t dim_;
  std::vector<MultiPoly> data_;
};

// Exact determinant via Bareiss elimination with full pivoting. Every
// intermediate entry is a minor, so each division is exact.
MultiPoly det_fraction_free(const PolyMatrix& m);

}  // namespace toricgcp

namespace toricgcp {

// Determinant by evaluation at 0, 1, 2, ... and interpolation in each of the
// listed variables in turn, then Bareiss on what remains. Falls back to plain
// Bareiss when the field has too few elements.
MultiPoly det_interpolated(const PolyMatrix& m, std::span<const std::size_t> vars);

// Determinant of a dense matrix over GF(p) with entries in [0, p).
std::uint64_t det_mod_p(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p);

}  // namespace toricgcp
