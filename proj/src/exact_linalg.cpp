#include "exact_linalg.hpp"

#include <utility>

namespace orbihear::detail {

namespace {

// Reduced row echelon form in place, pivoting only within the first `cols`
// columns; any further columns are carried along. Returns pivot columns.
std::vector<int> rref(RationalMatrix& m, int cols) {
  std::vector<int> pivots;
  const int rows = static_cast<int>(m.size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i) {
      if (m[i][c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[r], m[pivot]);
    const Rational inv = 1 / m[r][c];
    const int width = static_cast<int>(m[r].size());
    for (int j = c; j < width; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (int j = c; j < width; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<RationalPoint> solve_square(RationalMatrix a, RationalPoint b) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto pivots = rref(a, n);
  if (static_cast<int>(pivots.size()) < n) return std::nullopt;
  RationalPoint x(n);
  for (int i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

int rank(RationalMatrix rows) {
  if (rows.empty()) return 0;
  const int cols = static_cast<int>(rows.front().size());
  return static_cast<int>(rref(rows, cols).size());
}

std::vector<RationalPoint> null_space(RationalMatrix rows, int cols) {
  auto pivots = rref(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RationalPoint> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalPoint y(cols, Rational(0));
    y[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) y[pivots[r]] = -rows[r][free];
    basis.push_back(std::move(y));
  }
  return basis;
}

RationalMatrix integer_rows(const std::vector<IntVector>& rows) {
  RationalMatrix m;
  m.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Rational> r;
    r.reserve(row.size());
    for (auto x : row) r.emplace_back(x);
    m.push_back(std::move(r));
  }
  return m;
}

Rational dot(const IntVector& u, const RationalPoint& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * x[i];
  return s;
}

void for_each_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace orbihear::detail
