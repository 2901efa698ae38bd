#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "orbihear/rational.hpp"

namespace orbihear::detail {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Unique solution of a square system, or nullopt when singular.
std::optional<RationalPoint> solve_square(RationalMatrix a, RationalPoint b);

int rank(RationalMatrix rows);

/// Basis of {y : rows * y = 0}, y of length cols.
std::vector<RationalPoint> null_space(RationalMatrix rows, int cols);

RationalMatrix integer_rows(const std::vector<IntVector>& rows);

Rational dot(const IntVector& u, const RationalPoint& x);

/// Calls fn with every k-subset of {0..n-1} in lexicographic order; fn
/// returns false to stop early.
void for_each_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& fn);

}  // namespace orbihear::detail
