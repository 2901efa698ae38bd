#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "orbihear/polytope.hpp"
#include "orbihear/rational.hpp"

namespace orbihear {

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) = default;

  /// Exact determinant by fraction-free elimination; square matrices only.
  Integer determinant() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct SmithForm {
  IntegerMatrix U;  // rows x rows, unimodular
  IntegerMatrix D;  // rows x cols, diagonal, d1 | d2 | ..., nonnegative
  IntegerMatrix V;  // cols x cols, unimodular
};

SmithForm smith_normal_form(const IntegerMatrix& m);

/// Z/d1 x ... x Z/dk with d1 | ... | dk and every di >= 2. A zero factor
/// stands for an infinite cyclic summand.
struct FiniteAbelianGroup {
  std::vector<Integer> invariant_factors;

  bool trivial() const noexcept { return invariant_factors.empty(); }
  Integer order() const;
  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
};

/// Cokernel Z^cols / rowspan(m).
FiniteAbelianGroup cokernel(const IntegerMatrix& m);

/// v divided by the gcd of its entries. Throws Error(ZeroVector).
IntVector primitive(const IntVector& v);

/// Isotropy group of the open face: the lattice points of the real span of
/// the normals of the facets containing the face, modulo the span of
/// label * normal. Codim 0 gives the trivial group.
FiniteAbelianGroup isotropy_group(const LabeledPolytope& p, const Face& face);
std::int64_t isotropy_order(const LabeledPolytope& p, const Face& face);

/// Every element of the isotropy group, written in the basis
/// {label_i * normal_i : i in face.tight_set} with coordinates reduced to
/// [0, 1). The identity comes first.
std::vector<std::vector<Rational>> isotropy_elements(const LabeledPolytope& p, const Face& face);

}  // namespace orbihear
