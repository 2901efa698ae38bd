#include "orbihear/lattice.hpp"

#include <algorithm>
#include <utility>

#include "exact_linalg.hpp"
#include "orbihear/error.hpp"

namespace orbihear {

namespace {

using boost::multiprecision::abs;

Integer truncated_quotient(const Integer& a, const Integer& b) { return a / b; }

// Inverse of a unimodular matrix, exact.
IntegerMatrix unimodular_inverse(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  IntegerMatrix inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    detail::RationalMatrix a(n, std::vector<Rational>(n));
    RationalPoint b(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    }
    b[col] = 1;
    auto x = detail::solve_square(std::move(a), std::move(b));
    if (!x) throw Error(ErrorCode::InvalidInput, "matrix is not invertible");
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = boost::multiprecision::numerator((*x)[i]);
  }
  return inv;
}

Rational fractional_part(const Rational& x) {
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  Integer r = num % den;
  if (r < 0) r += den;
  return Rational(r, den);
}

// Coordinates of label_i * normal_i in a basis of the saturated lattice
// spanned by the face normals; rows follow face.tight_set.
IntegerMatrix generator_matrix(const LabeledPolytope& p, const Face& face) {
  const std::size_t q = face.tight_set.size();
  const std::size_t n = static_cast<std::size_t>(p.dim());
  IntegerMatrix a(q, n);
  for (std::size_t r = 0; r < q; ++r) {
    for (std::size_t c = 0; c < n; ++c) a(r, c) = p[face.tight_set[r]].normal[c];
  }
  const SmithForm snf = smith_normal_form(a);
  std::size_t rank = 0;
  while (rank < std::min(q, n) && snf.D(rank, rank) != 0) ++rank;
  // a = U^-1 D V^-1; the first `rank` rows of V^-1 are a basis of the
  // saturation, and u_i has coordinates (U^-1)_{ik} d_k there.
  const IntegerMatrix u_inv = unimodular_inverse(snf.U);
  IntegerMatrix g(q, rank);
  for (std::size_t i = 0; i < q; ++i) {
    const int label = p[face.tight_set[i]].label;
    for (std::size_t k = 0; k < rank; ++k) g(i, k) = u_inv(i, k) * snf.D(k, k) * label;
  }
  return g;
}

}  // namespace

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::ShapeMismatch, "matrix product dimensions differ");
  IntegerMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

Integer IntegerMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  // Bareiss fraction-free elimination.
  IntegerMatrix m = *this;
  const std::size_t n = rows_;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    }
    prev = m(k, k);
  }
  return n == 0 ? Integer(1) : Integer(sign * m(n - 1, n - 1));
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntegerMatrix a = m;
  IntegerMatrix u = IntegerMatrix::identity(rows);
  IntegerMatrix v = IntegerMatrix::identity(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < rows; ++c) std::swap(u(i, c), u(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < cols; ++r) std::swap(v(r, i), v(r, j));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t c = 0; c < cols; ++c) a(dst, c) += k * a(src, c);
    for (std::size_t c = 0; c < rows; ++c) u(dst, c) += k * u(src, c);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t r = 0; r < rows; ++r) a(r, dst) += k * a(r, src);
    for (std::size_t r = 0; r < cols; ++r) v(r, dst) += k * v(r, src);
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        add_row(i, t, -truncated_quotient(a(i, t), a(t, t)));
        clean = clean && a(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        add_col(j, t, -truncated_quotient(a(t, j), a(t, t)));
        clean = clean && a(t, j) == 0;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            add_row(t, i, Integer(1));
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

Integer FiniteAbelianGroup::order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

FiniteAbelianGroup cokernel(const IntegerMatrix& m) {
  const auto snf = smith_normal_form(m);
  FiniteAbelianGroup g;
  std::size_t zeros = 0;
  const std::size_t diag = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < diag; ++t) {
    const Integer& d = snf.D(t, t);
    if (d == 0) {
      ++zeros;
    } else if (d > 1) {
      g.invariant_factors.push_back(d);
    }
  }
  zeros += m.cols() - diag;
  for (std::size_t i = 0; i < zeros; ++i) g.invariant_factors.emplace_back(0);
  return g;
}

IntVector primitive(const IntVector& v) {
  const auto g = gcd_of(v);
  if (g == 0) throw Error(ErrorCode::ZeroVector, "cannot make the zero vector primitive");
  IntVector out(v);
  for (auto& x : out) x /= g;
  return out;
}

FiniteAbelianGroup isotropy_group(const LabeledPolytope& p, const Face& face) {
  if (face.tight_set.empty()) return {};
  return cokernel(generator_matrix(p, face));
}

std::int64_t isotropy_order(const LabeledPolytope& p, const Face& face) {
  return isotropy_group(p, face).order().convert_to<std::int64_t>();
}

std::vector<std::vector<Rational>> isotropy_elements(const LabeledPolytope& p, const Face& face) {
  if (face.tight_set.empty()) return {{}};
  const IntegerMatrix g = generator_matrix(p, face);
  const std::size_t q = g.rows();
  if (g.cols() != q) {
    throw Error(ErrorCode::InvalidPolytope, "face normals are dependent; the polytope is not simple there");
  }
  const auto snf = smith_normal_form(g);
  const IntegerMatrix v_inv = unimodular_inverse(snf.V);

  detail::RationalMatrix gt(q, std::vector<Rational>(q));
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) gt[j][i] = Rational(g(i, j));
  }

  std::vector<std::vector<Rational>> elements;
  std::vector<Integer> k(q, Integer(0));
  while (true) {
    // z = k V^-1, then beta solves beta G = z.
    RationalPoint z(q, Rational(0));
    for (std::size_t j = 0; j < q; ++j) {
      for (std::size_t i = 0; i < q; ++i) z[j] += Rational(k[i] * v_inv(i, j));
    }
    auto beta = detail::solve_square(gt, z);
    if (!beta) throw Error(ErrorCode::InvalidPolytope, "singular isotropy generator matrix");
    for (auto& b : *beta) b = fractional_part(b);
    elements.push_back(std::move(*beta));
    std::size_t i = 0;
    for (; i < q; ++i) {
      if (++k[i] < snf.D(i, i)) break;
      k[i] = 0;
    }
    if (i == q) break;
  }
  return elements;
}

}  // namespace orbihear
